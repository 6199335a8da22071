#include "hblocks/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hblocks/combinatorics.hpp"
#include "hblocks/quadrature.hpp"

namespace hblocks {

namespace {

void check_kr(const SeifertData& data, unsigned k, unsigned r) {
    if (k + 3 > static_cast<unsigned>(data.n))
        throw k_out_of_range("need 0 <= k <= n-3");
    if (r > k / 2) throw k_out_of_range("need 0 <= r <= kappa");
}

Real half_power(long long base, unsigned twice_exponent) {
    // base^{twice_exponent/2} for positive base
    Real root = sqrt(Real(base));
    Real acc(1);
    for (unsigned i = 0; i < twice_exponent; ++i) acc *= root;
    return acc;
}

Real half_power_signed(long long base, long long twice_exponent) {
    if (twice_exponent >= 0) return half_power(base, static_cast<unsigned>(twice_exponent));
    return 1 / half_power(base, static_cast<unsigned>(-twice_exponent));
}

// e^{2 pi i x} for exact rational x (reduced mod 1 first)
Cplx rational_phase(const Rational& x, const PrecisionCtx& ctx) {
    (void)ctx;
    return expi(2 * pi_const() * to_real(frac_part(x)));
}

} // namespace

PeriodicFn periodic_C_tilde(const SeifertData& data, unsigned k, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    if (k + 3 > static_cast<unsigned>(data.n))
        throw k_out_of_range("periodic_C_tilde: need 0 <= k <= n-3");
    const long long twoP = data.two_p();
    auto roots = unit_roots(twoP, ctx);

    PeriodicFn fn;
    fn.period = twoP;
    fn.label = "C~_" + std::to_string(k);
    fn.values.assign(static_cast<std::size_t>(twoP), Cplx());
    for (const SectorData& sec : all_sectors(data)) {
        Real weight = to_real(Rational(sec.sign()) * c_coeff(data, sec.epsilon, k));
        for (long long m = 0; m < twoP; ++m)
            fn.values[static_cast<std::size_t>(m)] +=
                weight * (*roots)[static_cast<std::size_t>(sec.ell * m % twoP)];
    }
    return fn;
}

PeriodicFn periodic_C(const SeifertData& data, unsigned k, long long K, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    if (K < 1) throw k_too_small("periodic_C: K must be >= 1");
    PeriodicFn fn = periodic_C_tilde(data, k, ctx);
    const long long twoP = data.two_p();
    const long long fourP = 2 * twoP;
    auto roots = unit_roots(fourP, ctx);
    for (long long m = 0; m < twoP; ++m) {
        long long idx = ((-(m * m % fourP) * (K % fourP)) % fourP + fourP) % fourP;
        fn.values[static_cast<std::size_t>(m)] *= (*roots)[static_cast<std::size_t>(idx)];
    }
    fn.label = "C_{" + std::to_string(k) + "," + std::to_string(K) + "}";

    Real mean = abs(fn.sum_over_period());
    if (mean > ctx.identity_tol())
        throw mean_value_not_zero("periodic_C: mean " + mean.str(3) + " exceeds tolerance");
    return fn;
}

Cplx l_value(const PeriodicFn& C, unsigned r, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    if (abs(C.sum_over_period()) > ctx.identity_tol())
        throw mean_value_not_zero("l_value: periodic function is not mean-zero");
    const long long M = C.period;
    RationalPolynomial B = bernoulli_poly(r + 1);
    Cplx acc;
    for (long long m = 1; m <= M; ++m)
        acc += C.at(m) * to_real(B(Rational(m, M)));
    Real Mr(1);
    for (unsigned i = 0; i < r; ++i) Mr *= Real(M);
    return -(Mr / Real(r + 1)) * acc;
}

Cplx eta_tilde_limit(const SeifertData& data, unsigned k, unsigned r, long long K,
                     const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    check_kr(data, k, r);
    if (K < 2) throw k_too_small("eta_tilde_limit: K must be >= 2");
    const unsigned iota = k % 2;
    const long long twoP = data.two_p();

    PeriodicFn C = periodic_C(data, k, K, ctx);
    RationalPolynomial B = bernoulli_poly(2 * r + iota + 1);
    Cplx acc;
    const Real parity = (k % 2 == 0) ? Real(1) : Real(-1);
    for (long long m = 1; m <= twoP; ++m)
        acc += (C.at(m) - parity * C.at(-m)) * to_real(B(Rational(m, twoP)));
    Real pref = half_power(twoP, 2 * r + iota) / (2 * Real(2 * r + iota + 1));
    return pref * acc;
}

Cplx alpha_coeff(const SeifertData& data, unsigned k, unsigned r, long long m,
                 const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    check_kr(data, k, r);
    const unsigned kappa = k / 2;
    const unsigned iota = k % 2;
    const long long twoP = data.two_p();

    PeriodicFn Ct = periodic_C_tilde(data, k, ctx);
    const Real parity = (k % 2 == 0) ? Real(1) : Real(-1);
    Cplx difference = Ct.at(m) - parity * Ct.at(-m);

    // (-1)^{kappa+r+n+1} i^{-1/2} (2P)^{(k+2r+iota-1)/2}
    //   / (2^{5/2} (4 pi i)^{kappa-r} (2r+iota+1)!) * k!/(kappa-r)!
    Cplx pref = minus_i_sqrt();
    if ((kappa + r + data.n + 1) % 2 == 1) pref = -pref;
    pref *= half_power_signed(twoP, static_cast<long long>(k) + 2 * r + iota - 1);
    pref /= 4 * sqrt(Real(2));
    pref /= powi(Cplx(Real(0), 4 * pi_const()), kappa - r);
    pref *= to_real(Rational(factorial(k), factorial(2 * r + iota + 1) * factorial(kappa - r)));

    return pref * difference * to_real(bernoulli_periodic(2 * r + iota + 1, Rational(m, twoP)));
}

namespace {

// int_0^infty theta_eta(iy) / y^{r+1/2} dy, split at 1, tanh-sinh on each piece
Cplx eta_moment_integral(const ThetaCombo& eta, unsigned r, const PrecisionCtx& ctx) {
    auto theta_at = [&](const Real& y) { return theta_combo_eval(eta, Cplx(Real(0), y), ctx); };
    QuadResult lower = tanh_sinh_01(
        [&](const Real& x, const Real&) {
            return theta_at(x) / pow(x, Real(r) + Real(1) / 2);
        },
        ctx, ctx.quad_tol());
    QuadResult upper = tanh_sinh_01(
        [&](const Real& x, const Real&) {
            // y = 1/x: dy = dx/x^2, y^{-r-1/2} = x^{r+1/2}
            return theta_at(1 / x) * pow(x, Real(r) - Real(3) / 2);
        },
        ctx, ctx.quad_tol());
    return lower.value + upper.value;
}

} // namespace

Cplx beta_coeff(const SeifertData& data, unsigned r, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    PsiHatEvaluator ev(data);
    const long long twoP = data.two_p();

    Cplx sum;
    for (unsigned k = 0; k + 3 <= static_cast<unsigned>(data.n); ++k) {
        Cplx integral = eta_moment_integral(ev.eta_combo(k, ctx), r, ctx);
        sum += half_power(twoP, k) * Cplx::i() * integral;
    }
    // (-1)^n (2r-1)!! (-i)^r / (2^{r+3/2} r!)
    Cplx pref = Cplx(to_real(Rational(double_factorial_odd(2 * static_cast<long long>(r) - 1),
                                      factorial(r))));
    pref *= powi(Cplx(Real(0), Real(-1)), r);
    Real denom(1);
    for (unsigned i = 0; i < r; ++i) denom *= 2;
    pref /= denom * 2 * sqrt(Real(2));
    if (data.n % 2 == 1) pref = -pref;
    return pref * sum;
}

Cplx wrt_exact(const SeifertData& data, long long K, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    if (K < 2)
        throw k_too_small("wrt_exact: K = 1 makes xi^{1/2} - xi^{-1/2} vanish; K must be >= 2");

    PsiHatEvaluator ev(data);
    const long long twoP = data.two_p();
    const Cplx two_pi_i(Real(0), 2 * pi_const());

    // Psi^(1/K) via the S-transformation at tau = -K + i0^+ (sgn(Re tau) = -1):
    // eta~ limits replace the false thetas, (-K)^s -> K^s e^{i pi s}
    Cplx psi_hat;
    for (unsigned k = 0; k + 3 <= static_cast<unsigned>(data.n); ++k) {
        const unsigned kappa = k / 2;
        const unsigned iota = k % 2;
        Cplx block;
        for (unsigned r = 0; r <= kappa; ++r) {
            // K^{kappa+iota+r+1/2} e^{i pi (kappa+iota+r+1/2)} = K^{...} (-1)^{kappa+iota+r} i
            Cplx tau_power = half_power(K, 2 * (kappa + iota + r) + 1) *
                             Cplx(Real(0), ((kappa + iota + r) % 2 == 0) ? Real(1) : Real(-1));
            block += d_coeff(kappa, iota, r).value(ctx) * tau_power *
                     eta_tilde_limit(data, k, r, K, ctx);
        }
        Cplx pref = minus_i_sqrt() * half_power_signed(twoP, static_cast<long long>(k) - 1) /
                    powi(two_pi_i, kappa);
        if (iota) pref = -pref;
        psi_hat -= pref * block; // sgn(Re tau) = -1

        // -(2P)^{k/2} * int_0^infty eta_{k+1}(iy)/sqrt(y + i/K) dy
        Cplx integral = eichler_integral(ev.eta_combo(k, ctx), Cplx(Real(-K)), ctx);
        psi_hat -= half_power(twoP, k) * integral;
    }

    Cplx p_at_root = eval_at_root_of_unity(p_polynomial(data), K, ctx);

    // tau_K = (-1)^n (Psi^(1/K) + P(xi_K)) / (2 xi^{Theta0/4} (xi^{1/2} - xi^{-1/2}))
    Cplx numer = psi_hat + p_at_root;
    if (data.n % 2 == 1) numer = -numer;
    Cplx xi_theta = rational_phase(data.theta0 / 4 / K, ctx);
    Cplx denom = Real(2) * xi_theta * Cplx(Real(0), 2 * sin(pi_const() / Real(K)));
    return numer / denom;
}

ExtrapolationResult wrt_extrapolate(const SeifertData& data, long long K,
                                    const PrecisionCtx& ctx, const RichardsonParams& params) {
    PrecisionScope scope(ctx);
    if (K < 2) throw k_too_small("wrt_extrapolate: K must be >= 2");
    if (params.rungs < params.order + 2)
        throw extrapolation_unstable("wrt_extrapolate: need rungs >= order + 2");

    const Cplx root = rational_phase(Rational(1, K), ctx); // e^{2 pi i/K}
    std::vector<std::vector<Cplx>> table(static_cast<std::size_t>(params.rungs));
    ExtrapolationResult res;

    Rational t = params.t0;
    for (int j = 0; j < params.rungs; ++j, t /= 2) {
        Cplx q = root * exp(Real(-to_real(t)));
        table[j].assign(static_cast<std::size_t>(params.order) + 1, Cplx());
        table[j][0] = eval_phi(data, q, ctx);
        if (j > 0) res.raw_deltas.push_back(abs(table[j][0] - table[j - 1][0]));
        // expansion in integer powers of t: column s removes t^s
        for (int s = 1; s <= params.order && s <= j; ++s) {
            Real w = Real(Integer(1) << s);
            table[j][s] = (w * table[j][s - 1] - table[j - 1][s - 1]) / (w - 1);
        }
        if (j > params.order)
            res.extrapolated_deltas.push_back(
                abs(table[j][params.order] - table[j - 1][params.order]));
    }

    const auto& deltas = res.extrapolated_deltas;
    if (deltas.size() < 2)
        throw extrapolation_unstable("wrt_extrapolate: ladder too short");
    if (!(deltas.back() < deltas.front() || deltas.back() < ctx.identity_tol()))
        throw extrapolation_unstable("wrt_extrapolate: extrapolated column is not settling");

    // |T_{J,s} - T_{J-1,s}| is dominated by the error of the previous row,
    // about 2^{s+1} times that of T_{J,s}; the raw delta is therefore a
    // conservative bound, floored at the working-precision noise level
    res.value = table.back()[params.order];
    res.error_estimate = deltas.back() + ctx.pow10(-(ctx.digits + ctx.tail_margin));
    return res;
}

Cplx AsymptoticExpansion::coefficient(const Rational& phase, unsigned kpower) const {
    for (const OscTerm& term : oscillatory)
        if (term.kpower == kpower && term.phase == phase) return term.coeff;
    return Cplx();
}

AsymptoticExpansion asymptotic_expansion(const SeifertData& data, int beta_order,
                                         bool include_p_term, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    AsymptoticExpansion out;
    out.include_p_term = include_p_term;

    const long long twoP = data.two_p();
    std::map<std::pair<Rational, unsigned>, Cplx> agg;
    for (long long m = 1; m <= twoP; ++m) {
        Rational phase = frac_part(Rational(-m * m, 4 * data.P));
        for (unsigned k = 0; k + 3 <= static_cast<unsigned>(data.n); ++k) {
            const unsigned kappa = k / 2;
            const unsigned iota = k % 2;
            for (unsigned r = 0; r <= kappa; ++r) {
                Cplx a = alpha_coeff(data, k, r, m, ctx);
                agg[{phase, kappa + iota + r}] += a;
            }
        }
    }
    for (const auto& [key, coeff] : agg)
        out.oscillatory.push_back({key.first, key.second, coeff});

    for (int r = 0; r <= beta_order; ++r)
        out.beta_tail.push_back(beta_coeff(data, static_cast<unsigned>(r), ctx));

    // (-1)^n / (2 sqrt2 i) = (-1)^n (-i) / (2 sqrt2)
    out.p_term_coeff = Cplx(Real(0), Real(-1)) / (2 * sqrt(Real(2)));
    if (data.n % 2 == 1) out.p_term_coeff = -out.p_term_coeff;
    if (!include_p_term) out.p_term_coeff = Cplx();
    return out;
}

Cplx asymptotic_eval(const AsymptoticExpansion& exp, const SeifertData& data, long long K,
                     const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    Cplx acc;
    for (const auto& term : exp.oscillatory) {
        Cplx phase = rational_phase(term.phase * K, ctx);
        Real kpow(1);
        for (unsigned i = 0; i < term.kpower; ++i) kpow *= Real(K);
        acc += phase * term.coeff * kpow;
    }
    for (std::size_t r = 0; r < exp.beta_tail.size(); ++r)
        acc += exp.beta_tail[r] / half_power(K, 2 * static_cast<unsigned>(r) + 1);
    if (exp.include_p_term) {
        Cplx p_at_root = eval_at_root_of_unity(p_polynomial(data), K, ctx);
        acc += exp.p_term_coeff * p_at_root / sqrt(Real(K));
    }
    return acc;
}

Cplx asymptotic_leading_stratum(const AsymptoticExpansion& exp, const SeifertData& data,
                                long long K, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const unsigned top = static_cast<unsigned>(data.n - 3);
    Cplx acc;
    for (const auto& term : exp.oscillatory) {
        if (term.kpower != top) continue;
        acc += rational_phase(term.phase * K, ctx) * term.coeff;
    }
    Real kpow(1);
    for (unsigned i = 0; i < top; ++i) kpow *= Real(K);
    return acc * kpow;
}

Cplx leading_term(const SeifertData& data, long long K, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    if (K < 2) throw k_too_small("leading_term: K must be >= 2");
    const long long twoP = data.two_p();
    const Real pi = pi_const();

    Cplx sum;
    for (long long m = 1; m <= twoP; ++m) {
        // sin(pi m/p_j) vanishes exactly iff p_j | m
        bool killed = false;
        for (long long pj : data.p) killed = killed || (m % pj == 0);
        if (killed) continue;
        Real product(1);
        for (long long pj : data.p) product *= sin(pi * Real(m) / Real(pj));
        Cplx phase = rational_phase(Rational(-m * m, 4 * data.P) * K, ctx);
        Real bern = to_real(bernoulli_periodic(static_cast<unsigned>(data.n) - 2,
                                               Rational(m, twoP)));
        Real parity = ((m * data.n) % 2 == 0) ? Real(1) : Real(-1);
        sum += parity * phase * bern * product;
    }

    Real kpow(1);
    for (int i = 0; i < data.n - 3; ++i) kpow *= Real(K);
    Real two_pow(1);
    for (int i = 0; i < data.n - 2; ++i) two_pow *= 2;
    Cplx pref = kpow * two_pow /
                (to_real(Rational(factorial(static_cast<unsigned>(data.n) - 2))) *
                 sqrt(Real(data.P)));
    pref *= rational_phase(-data.theta0 / 4 / K, ctx);       // xi_K^{-Theta0/4}
    pref *= rational_phase(Rational(-(2 * data.n - 3), 8), ctx); // e^{-(2n-3) pi i/4}
    return pref * sum;
}

Cplx cs_grouped_leading(const SeifertData& data, long long K, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    if (K < 2) throw k_too_small("cs_grouped_leading: K must be >= 2");
    const Real pi = pi_const();

    Cplx sum;
    for (const FlatConnectionLabel& lab : flat_connections(data)) {
        // sine factors vanish exactly at l_1 in {0, p_1} and at l_j = 0
        bool killed = (lab.l[0] == 0 || lab.l[0] == data.p[0]);
        for (int j = 1; j < data.n; ++j) killed = killed || (lab.l[j] == 0);
        if (killed) continue;
        Real sines = sin(pi * Real(lab.l[0]) * Real(data.P) / Real(data.p[0] * data.p[0]));
        for (int j = 1; j < data.n; ++j)
            sines *= sin(2 * pi * Real(lab.l[j]) * Real(data.P) / Real(data.p[j] * data.p[j]));

        // sum_eps eps_1...eps_n B-bar_{n-2}(eps_1 l_1/2p_1 + sum_j eps_j l_j/p_j)
        Real bsum(0);
        for (unsigned b = 0; b < (1u << data.n); ++b) {
            Rational arg(0);
            int sign = 1;
            for (int j = 0; j < data.n; ++j) {
                int eps = (b >> j) & 1 ? -1 : 1;
                sign *= eps;
                long long den = (j == 0) ? 2 * data.p[0] : data.p[j];
                arg += Rational(eps * lab.l[j], den);
            }
            bsum += sign * to_real(bernoulli_periodic(static_cast<unsigned>(data.n) - 2, arg));
        }

        Cplx phase = rational_phase(lab.cs * K, ctx);
        Real parity = (lab.l[0] % 2 == 0) ? Real(1) : Real(-1);
        sum += phase * parity * sines * bsum;
    }

    Real kpow(1);
    for (int i = 0; i < data.n - 3; ++i) kpow *= Real(K);
    Real two_pow(1);
    for (int i = 0; i < data.n - 2; ++i) two_pow *= 2;
    Cplx pref = kpow * two_pow /
                (to_real(Rational(factorial(static_cast<unsigned>(data.n) - 2))) *
                 sqrt(Real(data.P)));
    pref *= rational_phase(-data.theta0 / 4 / K, ctx);
    pref *= rational_phase(Rational(-(2 * data.n - 3), 8), ctx);
    return pref * sum;
}

bool tetra_membership(const Rational& x, const Rational& y, const Rational& z) {
    Rational half(1, 2);
    if (x < 0 || y < 0 || z < 0 || x > half || y > half || z > half)
        throw error("tetra_membership: inputs must lie in [0,1/2]");
    Rational d = x - y, s = x + y;
    if (d == -z || d == z || s == z || s == 1 - z)
        throw boundary_point("tetra_membership: point lies on the boundary");
    return (-z < d) && (d < z) && (z < s) && (s < 1 - z);
}

} // namespace hblocks
