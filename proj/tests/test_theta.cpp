#include <doctest.h>

#include "hblocks/hblock.hpp"
#include "hblocks/theta.hpp"

using namespace hblocks;

namespace {

// plain reference sum with an explicit cutoff, independent of the scan logic
Cplx theta_reference(long long M, unsigned k, long long nu, const Cplx& tau, long long mmax,
                     bool false_variant) {
    Cplx acc;
    Real sqrtM = sqrt(Real(M));
    Cplx ipi(Real(0), pi_const());
    for (long long m = -mmax; m <= mmax; ++m) {
        if ((((m - nu) % M) + M) % M != 0) continue;
        if (false_variant && m == 0) continue;
        Real x = Real(m) / sqrtM;
        Real xk(1);
        for (unsigned i = 0; i < k; ++i) xk *= x;
        Cplx term = xk * exp(ipi * tau * Real(m) * Real(m) / Real(M));
        if (false_variant && m < 0) term = -term;
        if (!false_variant && m == 0) term = Cplx(Real(k == 0 ? 1 : 0));
        acc += term;
    }
    return acc;
}

} // namespace

TEST_CASE("theta evaluation basics") {
    PrecisionCtx ctx(50);
    PrecisionScope scope(ctx);

    // odd weight at nu = 0 cancels pairwise
    CHECK(abs(theta_eval(ThetaClass(5, 1, 0), Cplx::i(), ctx)) < ctx.identity_tol());

    // theta_{k,-mu} = (-1)^k theta_{k,mu}
    for (unsigned k : {0u, 1u, 2u, 3u}) {
        Cplx a = theta_eval(ThetaClass(7, k, 3), Cplx::i(), ctx);
        Cplx b = theta_eval(ThetaClass(7, k, 4), Cplx::i(), ctx);
        Cplx expect = (k % 2 == 0) ? a : -a;
        CHECK(abs(b - expect) < ctx.identity_tol());
    }

    // full-lattice value at tau = i: sum over all integers of e^{-pi m^2},
    // Jacobi theta3(e^{-pi}) = Gamma(1/4)/(pi^{3/4} sqrt 2); computed here by
    // the reference sum
    Cplx oracle = theta_reference(1, 0, 0, Cplx::i(), 40, false);
    Cplx got = theta_eval(ThetaClass(1, 0, 0), Cplx::i(), ctx);
    CHECK(abs(got - oracle) < ctx.identity_tol());
    CHECK(abs(got - Cplx(Real("1.08643481121330801457531612151022345707020571"))) <
          ctx.pow10(-42));

    CHECK_THROWS_AS(theta_eval(ThetaClass(5, 0, 1), Cplx(Real(1), Real(-1)), ctx),
                    not_upper_half_plane);
    CHECK_THROWS_AS(ThetaClass(5, 0, 5), error);
}

TEST_CASE("truncation soundness: doubling the reference cutoff changes nothing") {
    PrecisionCtx ctx(40);
    PrecisionScope scope(ctx);
    Cplx tau(Real(1) / 5, Real(1) / 4);
    for (unsigned k : {0u, 2u}) {
        // cutoff from the tail target, then doubled
        long long mmax = 260;
        Cplx a = theta_reference(12, k, 5, tau, mmax, false);
        Cplx b = theta_reference(12, k, 5, tau, 2 * mmax, false);
        CHECK(abs(a - b) < ctx.pow10(-(ctx.digits + 5)));
        Cplx lib = theta_eval_direct(ThetaClass(12, k, 5), tau, ctx);
        CHECK(abs(lib - b) < ctx.pow10(-(ctx.digits + 5)));
    }
}

TEST_CASE("acceleration agrees with direct summation near the contract window") {
    PrecisionCtx ctx(50);
    PrecisionScope scope(ctx);
    for (long long M : {12ll, 60ll}) {
        for (unsigned k : {0u, 1u, 3u}) {
            for (int step : {1, 2}) {
                Cplx tau(Real(1) / 3, Real(step) / Real(M)); // Im in [1/M, 2/M]
                ThetaClass c(M, k, 7 % M);
                Cplx d = theta_eval_direct(c, tau, ctx);
                Cplx t = theta_eval_transformed(c, tau, ctx);
                CHECK(abs(d - t) < ctx.identity_tol());
            }
        }
    }
}

TEST_CASE("false theta basics") {
    PrecisionCtx ctx(50);
    PrecisionScope scope(ctx);

    // nu = 0, even weight: sgn-odd cancellation
    CHECK(abs(false_theta_eval(ThetaClass(6, 2, 0), Cplx::i(), ctx)) < ctx.identity_tol());

    // theta~_{k,-mu} = (-1)^{k+1} theta~_{k,mu}
    Cplx tau(Real(0), Real(1) / 2);
    for (unsigned k : {0u, 1u, 2u}) {
        Cplx a = false_theta_eval(ThetaClass(9, k, 2), tau, ctx);
        Cplx b = false_theta_eval(ThetaClass(9, k, 7), tau, ctx);
        Cplx expect = (k % 2 == 0) ? -a : a;
        CHECK(abs(b - expect) < ctx.identity_tol());
    }

    // d/dtau theta~_{k} = pi i theta~_{k+2}, central difference
    {
        ThetaClass low(12, 1, 5), high(12, 3, 5);
        Real h = ctx.pow10(-15);
        Cplx tau0 = Cplx::i();
        Cplx num = (false_theta_eval(low, tau0 + Cplx(h), ctx) -
                    false_theta_eval(low, tau0 - Cplx(h), ctx)) /
                   (2 * h);
        Cplx expect = Cplx(Real(0), pi_const()) * false_theta_eval(high, tau0, ctx);
        CHECK(abs(num - expect) < ctx.pow10(-25)); // h^2 floor
    }

    // truncation error is reported and small
    auto full = false_theta_eval_full(ThetaClass(12, 1, 5), Cplx::i(), ctx);
    CHECK(full.truncation_error < ctx.truncation_tol());
}

TEST_CASE("two-variable theta-hat") {
    PrecisionCtx ctx(30);
    PrecisionScope scope(ctx);
    ThetaClass c(2, 0, 1);
    Cplx tau = Cplx::i();

    // w = tau vanishes termwise
    CHECK(abs(theta_hat_eval(c, tau, tau, ctx)) == 0);

    // w along tau + i t + eps approaches the false theta
    Cplx far = theta_hat_eval(c, tau, tau + Cplx(Real(1) / 10, Real(40)), ctx);
    Cplx expect = false_theta_eval(c, tau, ctx);
    CHECK(abs(far - expect) < ctx.identity_tol());

    // line-integral route agrees
    Cplx w = tau + Cplx(Real(3) / 10, Real(1) / 2);
    Cplx a = theta_hat_eval(c, tau, w, ctx);
    Cplx b = theta_hat_line_integral(c, tau, w, ctx);
    CHECK(abs(a - b) < ctx.identity_tol());

    // the branch-sensitive sgn flips coherently under Re(w - tau) -> -Re
    Cplx w2 = tau + Cplx(Real(-3) / 10, Real(1) / 2);
    Cplx a2 = theta_hat_eval(c, tau, w2, ctx);
    Cplx b2 = theta_hat_line_integral(c, tau, w2, ctx);
    CHECK(abs(a2 - b2) < ctx.identity_tol());

    CHECK_THROWS_AS(theta_hat_eval(c, Cplx(Real(1)), tau, ctx), not_upper_half_plane);
}

TEST_CASE("Eichler integrals") {
    PrecisionCtx ctx(50);
    PrecisionScope scope(ctx);

    // zero combination integrates to zero
    ThetaCombo zero{10, 1, {{1, Cplx()}, {3, Cplx()}}};
    CHECK(abs(eichler_integral(zero, Cplx(Real(1) / 3, Real(1) / 5), ctx)) == 0);

    // non-cuspidal even weight rejected, Re(tau) = 0 rejected
    ThetaCombo bad{10, 2, {{1, Cplx(Real(1))}}};
    CHECK_THROWS_AS(eichler_integral(bad, Cplx(Real(1) / 3, Real(1) / 5), ctx),
                    combination_not_cuspidal);
    ThetaCombo good{10, 1, {{1, Cplx(Real(1))}}};
    CHECK_THROWS_AS(eichler_integral(good, Cplx(Real(0), Real(1) / 5), ctx), error);

    // conjugate reflection: for real coefficients, I(-conj tau) = conj I(tau)
    {
        ThetaCombo combo{12, 1, {{1, Cplx(Real(1))}, {5, Cplx(Real(-2))}}};
        Cplx tau(Real(2) / 7, Real(1) / 3);
        Cplx a = eichler_integral(combo, tau, ctx);
        Cplx b = eichler_integral(combo, Cplx(-tau.re, tau.im), ctx);
        CHECK(abs(b - conj(a)) < ctx.identity_tol());
    }
}

TEST_CASE("S-transformation residuals vanish") {
    PrecisionCtx ctx(50);
    PrecisionScope scope(ctx);
    const Cplx tau1(Real(1) / 7, Real(1) / 3);
    const Cplx tau2(Real(1) / 3, Real(1) / 5);

    // ordinary, k = 0,1
    CHECK(abs(s_transform_residual(STransformKind::ordinary01, ThetaClass(60, 1, 1), tau1, ctx)) <
          ctx.identity_tol());
    CHECK(abs(s_transform_residual(STransformKind::ordinary01, ThetaClass(60, 0, 0), tau1, ctx)) <
          ctx.identity_tol());

    // general weight mixes into lower weights
    for (unsigned k : {2u, 5u})
        CHECK(abs(s_transform_residual(STransformKind::ordinary_general, ThetaClass(60, k, 11),
                                       tau1, ctx)) < ctx.identity_tol());

    // false theta, k = 0, single class (M = 120)
    CHECK(abs(s_transform_residual(STransformKind::false0, ThetaClass(120, 0, 1), tau2, ctx)) <
          ctx.identity_tol());

    // false theta, k = 1, cuspidal pair
    ThetaCombo pair{12, 1, {{1, Cplx(Real(1))}, {2, Cplx(Real(-1))}}};
    CHECK(abs(s_transform_residual(STransformKind::false1, pair, tau2, ctx)) <
          ctx.identity_tol());
    ThetaCombo notcusp{12, 1, {{1, Cplx(Real(1))}}};
    CHECK_THROWS_AS(s_transform_residual(STransformKind::false1, notcusp, tau2, ctx),
                    combination_not_cuspidal);

    // general false transform at weight 2 with the (2,3,5)-derived combination
    {
        PsiHatEvaluator ev(make_seifert({2, 3, 5}));
        ThetaCombo combo = ev.weight_combo(0, ctx);
        combo.k = 2;
        CHECK(abs(s_transform_residual(STransformKind::false_general, combo, tau2, ctx)) <
              ctx.identity_tol());
        // the sgn(Re tau) factor flips coherently on the other half-plane
        CHECK(abs(s_transform_residual(STransformKind::false_general, combo,
                                       Cplx(-tau2.re, tau2.im), ctx)) < ctx.identity_tol());
    }
}
