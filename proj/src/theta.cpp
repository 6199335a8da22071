#include "hblocks/theta.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "hblocks/combinatorics.hpp"
#include "hblocks/quadrature.hpp"

namespace hblocks {

namespace {

void require_upper(const Cplx& tau, const char* who) {
    if (!(tau.im > 0)) throw not_upper_half_plane(std::string(who) + ": Im(tau) must be > 0");
}

constexpr long long kMaxScanTerms = 80'000'000;

// The transformed route wins when -1/tau has strictly larger imaginary
// part, i.e. |tau| < 1; beyond Im(tau) >= 1 direct summation is already
// geometric per step.
bool prefer_transformed(const Cplx& tau) {
    return tau.im < 1 && norm(tau) < 1;
}

Real weight_envelope(const Real& x_abs, unsigned wmax) {
    return x_abs > 1 ? pow(x_abs, static_cast<int>(wmax)) : Real(1);
}

} // namespace

ThetaClass::ThetaClass(long long M_, unsigned k_, long long nu_) : M(M_), k(k_), nu(nu_) {
    if (M < 1) throw error("ThetaClass: M must be positive");
    if (nu < 0 || nu >= M) throw error("ThetaClass: residue must satisfy 0 <= nu < M");
}

Cplx ThetaCombo::weight_sum() const {
    Cplx s;
    for (const auto& [nu, a] : terms) s += a;
    return s;
}

std::shared_ptr<const std::vector<Cplx>> unit_roots(long long M, const PrecisionCtx& ctx) {
    static std::map<std::pair<long long, int>, std::shared_ptr<const std::vector<Cplx>>> cache;
    static std::mutex mutex;
    PrecisionScope scope(ctx);
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(M, ctx.working_digits());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto roots = std::make_shared<std::vector<Cplx>>();
    roots->reserve(static_cast<std::size_t>(M));
    Real two_pi = 2 * pi_const();
    for (long long t = 0; t < M; ++t)
        roots->push_back(expi(two_pi * Real(t) / Real(M)));
    cache.emplace(key, roots);
    return cache[key];
}

std::vector<std::vector<Cplx>> theta_table(long long M, const std::vector<unsigned>& weights,
                                           const Cplx& tau_in, const PrecisionCtx& ctx,
                                           bool false_variant) {
    PrecisionScope scope(ctx);
    const Cplx tau = promoted(tau_in);
    require_upper(tau, "theta_table");

    const std::size_t W = weights.size();
    unsigned wmax = 0;
    for (unsigned w : weights) wmax = std::max(wmax, w);

    const Real tol = ctx.truncation_tol() / 4;
    const Real sqrtM = sqrt(Real(M));
    const Cplx Q = exp(Cplx(Real(0), pi_const()) * tau / Real(M)); // e^{pi i tau/M}

    double v = tau.im.convert_to<double>();
    v = std::max(v, 1e-300);
    const double m_peak =
        std::sqrt(std::max(1.0, static_cast<double>(wmax) * static_cast<double>(M) /
                                    (2 * 3.14159265358979 * v)));

    std::vector<std::vector<Cplx>> table(W, std::vector<Cplx>(static_cast<std::size_t>(M)));
    if (!false_variant) {
        // m = 0 contributes 0^w, i.e. only to weight 0
        for (std::size_t i = 0; i < W; ++i)
            if (weights[i] == 0) table[i][0] += Real(1);
    }

    Cplx T = Q;               // Q^{m^2} at m = 1
    Cplx R = powi(Q, 3);      // Q^{2m+1} at m = 1
    const Cplx Q2 = Q * Q;
    std::vector<Real> xpow(wmax + 1);
    int small_streak = 0;
    for (long long m = 1;; ++m) {
        if (m > kMaxScanTerms)
            throw error("theta_table: summation did not converge (Im(tau) too small?)");
        Real x = Real(m) / sqrtM;
        xpow[0] = Real(1);
        for (unsigned w = 1; w <= wmax; ++w) xpow[w] = xpow[w - 1] * x;

        const std::size_t nu_pos = static_cast<std::size_t>(m % M);
        const std::size_t nu_neg = static_cast<std::size_t>((M - m % M) % M);
        for (std::size_t i = 0; i < W; ++i) {
            Cplx contrib = T * xpow[weights[i]];
            table[i][nu_pos] += contrib;
            bool odd = weights[i] % 2 == 1;
            // -m carries (-1)^w from the power and sgn(-m) = -1 when false
            Cplx mirrored = odd ? -contrib : contrib;
            if (false_variant)
                table[i][nu_neg] -= mirrored;
            else
                table[i][nu_neg] += mirrored;
        }

        Real env = abs(T) * weight_envelope(x, wmax);
        if (static_cast<double>(m) > m_peak && env < tol)
            ++small_streak;
        else
            small_streak = 0;
        if (small_streak >= 2) break;

        T *= R;
        R *= Q2;
    }
    return table;
}

namespace {

struct SingleScan {
    Cplx value;
    Real tail_bound;
};

// sum over the residue class nu + M Z, direct lattice summation
SingleScan theta_single_scan(long long M, unsigned k, long long nu, const Cplx& tau_in,
                             const PrecisionCtx& ctx, bool false_variant) {
    const Cplx tau = promoted(tau_in);
    require_upper(tau, "theta");
    nu = ((nu % M) + M) % M;
    const Real tol = ctx.truncation_tol() / 4;
    const Real sqrtM = sqrt(Real(M));
    const Cplx Q = exp(Cplx(Real(0), pi_const()) * tau / Real(M));
    const Cplx Qstep = powi(Q, 2 * M * M); // ratio-of-ratios for strides of M

    double v = std::max(tau.im.convert_to<double>(), 1e-300);
    const double m_peak = std::sqrt(
        std::max(1.0, static_cast<double>(k) * static_cast<double>(M) / (2 * 3.14159265358979 * v)));

    SingleScan out;
    out.tail_bound = Real(0);

    auto x_power = [&](long long m) {
        Real x = Real(m) / sqrtM;
        Real acc(1);
        for (unsigned i = 0; i < k; ++i) acc *= x;
        return acc;
    };

    if (nu == 0) {
        if (!false_variant && k == 0) out.value += Real(1); // m = 0, 0^0
    }

    // ascending branch: first positive representative
    {
        long long m = (nu == 0) ? M : nu;
        Cplx T = powi(Q, m * m);
        Cplx U = powi(Q, 2 * m * M + M * M);
        int streak = 0;
        for (long long steps = 0;; ++steps) {
            if (steps > kMaxScanTerms)
                throw error("theta: summation did not converge (Im(tau) too small?)");
            out.value += x_power(m) * T; // sgn(+m) = +1 either way
            Real env = abs(T) * weight_envelope(Real(m) / sqrtM, k);
            if (static_cast<double>(m) > m_peak && env < tol) {
                if (++streak >= 2) {
                    out.tail_bound += env;
                    break;
                }
            } else {
                streak = 0;
            }
            T *= U;
            U *= Qstep;
            m += M;
        }
    }
    // descending branch: first negative representative
    {
        long long m = nu - M;
        Cplx T = powi(Q, m * m);
        Cplx U = powi(Q, -2 * m * M + M * M);
        int streak = 0;
        for (long long steps = 0;; ++steps) {
            if (steps > kMaxScanTerms)
                throw error("theta: summation did not converge (Im(tau) too small?)");
            Cplx term = x_power(m) * T; // x_power keeps the sign of m
            if (false_variant)
                out.value -= term; // sgn(m) = -1
            else
                out.value += term;
            Real env = abs(T) * weight_envelope(Real(-m) / sqrtM, k);
            if (static_cast<double>(-m) > m_peak && env < tol) {
                if (++streak >= 2) {
                    out.tail_bound += env;
                    break;
                }
            } else {
                streak = 0;
            }
            T *= U;
            U *= Qstep;
            m -= M;
        }
    }
    return out;
}

// assembled right-hand side of the weight-mixing S-transformation at sigma:
//   theta_{k,mu}(-1/sigma) =
//     (-1)^iota (-i)^{1/2} / sqrt(M) * sigma^{kappa+iota+1/2} / (2 pi i)^kappa
//     * sum_nu e^{2 pi i mu nu} sum_r d_{kappa,iota,r} sigma^r theta_{2r+iota,nu}(sigma)
// g must hold the per-residue phase coefficients (the mu-sum already folded in).
Cplx s_transform_rhs_impl(long long M, unsigned k, const std::vector<Cplx>& g, const Cplx& sigma,
                        const PrecisionCtx& ctx, bool false_variant) {
    const unsigned kappa = k / 2;
    const unsigned iota = k % 2;
    std::vector<unsigned> weights;
    for (unsigned r = 0; r <= kappa; ++r) weights.push_back(2 * r + iota);
    auto table = theta_table(M, weights, sigma, ctx, false_variant);

    Cplx acc;
    Cplx sigma_r(Real(1));
    for (unsigned r = 0; r <= kappa; ++r) {
        Cplx inner;
        for (long long nu = 0; nu < M; ++nu) {
            const Cplx& gn = g[static_cast<std::size_t>(nu)];
            if (gn.is_zero()) continue;
            inner += gn * table[r][static_cast<std::size_t>(nu)];
        }
        acc += d_coeff(kappa, iota, r).value(ctx) * sigma_r * inner;
        sigma_r *= sigma;
    }
    Cplx pref = minus_i_sqrt() / sqrt(Real(M)) * pow(sigma, Real(kappa + iota) + Real(1) / 2) /
                powi(Cplx(Real(0), 2 * pi_const()), kappa);
    if (iota) pref = -pref;
    return pref * acc;
}

} // namespace

std::vector<Cplx> phase_coefficients(long long M,
                                     const std::vector<std::pair<long long, Cplx>>& terms,
                                     const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    auto roots = unit_roots(M, ctx);
    std::vector<Cplx> g(static_cast<std::size_t>(M));
    for (long long nu = 0; nu < M; ++nu) {
        Cplx acc;
        for (const auto& [nuj, a] : terms) {
            long long res = ((nuj % M) + M) % M;
            acc += a * (*roots)[static_cast<std::size_t>(res * nu % M)];
        }
        g[static_cast<std::size_t>(nu)] = acc;
    }
    return g;
}

Cplx s_transform_rhs(long long M, unsigned k, const std::vector<Cplx>& g, const Cplx& tau,
                     const PrecisionCtx& ctx, bool false_variant) {
    PrecisionScope scope(ctx);
    return s_transform_rhs_impl(M, k, g, promoted(tau), ctx, false_variant);
}

Cplx theta_eval_direct(const ThetaClass& c, const Cplx& tau, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    return theta_single_scan(c.M, c.k, c.nu, tau, ctx, false).value;
}

Cplx theta_eval_transformed(const ThetaClass& c, const Cplx& tau_in, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const Cplx tau = promoted(tau_in);
    require_upper(tau, "theta_eval_transformed");
    Cplx sigma = -(Cplx(Real(1)) / tau); // tau = -1/sigma
    std::vector<Cplx> g = phase_coefficients(c.M, {{c.nu, Cplx(Real(1))}}, ctx);
    return s_transform_rhs_impl(c.M, c.k, g, sigma, ctx, false);
}

Cplx theta_eval(const ThetaClass& c, const Cplx& tau, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    require_upper(tau, "theta_eval");
    if (prefer_transformed(tau)) return theta_eval_transformed(c, tau, ctx);
    return theta_eval_direct(c, tau, ctx);
}

FalseThetaResult false_theta_eval_full(const ThetaClass& c, const Cplx& tau,
                                       const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    SingleScan scan = theta_single_scan(c.M, c.k, c.nu, tau, ctx, true);
    return FalseThetaResult{scan.value, scan.tail_bound};
}

Cplx false_theta_eval(const ThetaClass& c, const Cplx& tau, const PrecisionCtx& ctx) {
    return false_theta_eval_full(c, tau, ctx).value;
}

Cplx false_theta_combo_eval(const ThetaCombo& combo, const Cplx& tau, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    Cplx acc;
    for (const auto& [nu, a] : combo.terms) {
        if (a.is_zero()) continue;
        acc += a * theta_single_scan(combo.M, combo.k, nu, tau, ctx, true).value;
    }
    return acc;
}

Cplx theta_combo_eval(const ThetaCombo& combo, const Cplx& tau_in, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const Cplx tau = promoted(tau_in);
    require_upper(tau, "theta_combo_eval");
    if (!prefer_transformed(tau)) {
        Cplx acc;
        for (const auto& [nu, a] : combo.terms) {
            if (a.is_zero()) continue;
            acc += a * theta_single_scan(combo.M, combo.k, nu, tau, ctx, false).value;
        }
        return acc;
    }
    Cplx sigma = -(Cplx(Real(1)) / tau);
    std::vector<Cplx> g = phase_coefficients(combo.M, combo.terms, ctx);
    // cuspidal combinations cancel the constant term of the weight-0 theta
    // exactly; zeroing g[0] keeps the huge sigma powers away from the
    // rounding residue of sum a_j
    if (combo.k % 2 == 0 && abs(combo.weight_sum()) < ctx.pow10(-ctx.digits)) g[0] = Cplx();
    return s_transform_rhs_impl(combo.M, combo.k, g, sigma, ctx, false);
}

Cplx theta_hat_eval(const ThetaClass& c, const Cplx& tau_in, const Cplx& w_in,
                    const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const Cplx tau = promoted(tau_in);
    const Cplx w = promoted(w_in);
    require_upper(tau, "theta_hat_eval");
    require_upper(w, "theta_hat_eval");
    Cplx wt = w - tau;
    if (wt.is_zero()) return Cplx(); // erf(0) = 0 termwise
    ThetaClass up(c.M, c.k + 1, c.nu);
    auto f = [&](const Real& t) { return theta_eval(up, tau + wt * (t * t), ctx); };
    QuadResult quad = gauss_legendre_01(f, ctx, ctx.quad_tol());
    return Cplx(Real(0), Real(-2)) * sqrt(Cplx::i() * wt) * quad.value;
}

Cplx theta_hat_line_integral(const ThetaClass& c, const Cplx& tau_in, const Cplx& w_in,
                             const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const Cplx tau = promoted(tau_in);
    const Cplx w = promoted(w_in);
    require_upper(tau, "theta_hat_line_integral");
    require_upper(w, "theta_hat_line_integral");
    Cplx wt = w - tau;
    if (wt.re.is_zero())
        throw error("theta_hat_line_integral: requires Re(tau) != Re(w)");
    ThetaClass up(c.M, c.k + 1, c.nu);
    // z = tau + (w-tau) u; sqrt(-i(z-tau)) = sqrt(-i(w-tau)) sqrt(u) for u > 0
    auto f = [&](const Real& u, const Real&) {
        return theta_eval(up, tau + wt * u, ctx) / sqrt(u);
    };
    QuadResult quad = tanh_sinh_01(f, ctx, ctx.quad_tol());
    Real sg = wt.re > 0 ? Real(1) : Real(-1);
    return Cplx(Real(0), -sg) * wt / sqrt(Cplx(Real(0), Real(-1)) * wt) * quad.value;
}

Cplx eichler_integral(const ThetaCombo& combo, const Cplx& tau_in, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const Cplx tau = promoted(tau_in);
    if (tau.is_zero() || tau.re.is_zero())
        throw error("eichler_integral: requires Re(tau) != 0");
    bool all_zero = true;
    for (const auto& [nu, a] : combo.terms)
        if (!a.is_zero()) all_zero = false;
    if (all_zero) return Cplx();
    if (combo.k % 2 == 0 && abs(combo.weight_sum()) > ctx.pow10(-ctx.digits))
        throw combination_not_cuspidal(
            "eichler_integral: even weight needs sum a_j = 0, got |sum| = " +
            abs(combo.weight_sum()).str(3));

    const Cplx s = Cplx(Real(0), Real(-1)) / tau; // -i/tau
    // -i int_0^{i inf} theta(z)/sqrt(-i(z+1/tau)) dz = int_0^inf theta(iy)/sqrt(y+s) dy
    auto f = [&](const Real& y) {
        return theta_combo_eval(combo, Cplx(Real(0), y), ctx) / sqrt(Cplx(y) + s);
    };
    QuadResult lower = tanh_sinh_01([&](const Real& x, const Real&) { return f(x); }, ctx,
                                    ctx.quad_tol());
    QuadResult upper = tanh_sinh_01(
        [&](const Real& x, const Real&) {
            Real y = 1 / x;
            return f(y) * y * y;
        },
        ctx, ctx.quad_tol());
    return lower.value + upper.value;
}

namespace {

Real sign_re(const Cplx& tau, const char* who) {
    if (tau.re.is_zero()) throw error(std::string(who) + ": requires Re(tau) != 0");
    return tau.re > 0 ? Real(1) : Real(-1);
}

// middle term of the false S-transformations:
//   sgn(Re tau) (-1)^iota (-i)^{1/2} tau^{kappa+iota+1/2} / ((2 pi i)^kappa sqrt M)
//   * sum_nu g(nu) sum_r d_{kappa,iota,r} tau^r theta~_{2r+iota,nu}(tau)
Cplx false_middle_term(long long M, unsigned k, const std::vector<Cplx>& g, const Cplx& tau,
                       const PrecisionCtx& ctx) {
    return sign_re(tau, "false S-transform") * s_transform_rhs_impl(M, k, g, tau, ctx, true);
}

} // namespace

Cplx s_transform_residual(STransformKind kind, const ThetaClass& c, const Cplx& tau_in,
                          const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const Cplx tau = promoted(tau_in);
    require_upper(tau, "s_transform_residual");
    const Cplx minus_inv = -(Cplx(Real(1)) / tau);

    switch (kind) {
        case STransformKind::ordinary01: {
            if (c.k > 1) throw error("s_transform_residual: ordinary01 needs k <= 1");
            Cplx lhs = theta_eval_direct(c, minus_inv, ctx);
            auto table = theta_table(c.M, {c.k}, tau, ctx, false);
            auto roots = unit_roots(c.M, ctx);
            Cplx sum;
            for (long long nu = 0; nu < c.M; ++nu)
                sum += (*roots)[static_cast<std::size_t>(c.nu * nu % c.M)] *
                       table[0][static_cast<std::size_t>(nu)];
            Cplx pref = minus_i_sqrt() / sqrt(Real(c.M)) *
                        pow(tau, Real(c.k) + Real(1) / 2);
            if (c.k % 2 == 1) pref = -pref;
            return lhs - pref * sum;
        }
        case STransformKind::ordinary_general: {
            Cplx lhs = theta_eval_direct(c, minus_inv, ctx);
            std::vector<Cplx> g = phase_coefficients(c.M, {{c.nu, Cplx(Real(1))}}, ctx);
            Cplx rhs = s_transform_rhs_impl(c.M, c.k, g, tau, ctx, false);
            return lhs - rhs;
        }
        case STransformKind::false0: {
            if (c.k != 0) throw error("s_transform_residual: false0 needs k = 0");
            ThetaCombo combo{c.M, 0, {{c.nu, Cplx(Real(1))}}};
            return s_transform_residual(STransformKind::false_general, combo, tau, ctx);
        }
        default:
            throw error("s_transform_residual: this kind needs a ThetaCombo");
    }
}

Cplx s_transform_residual(STransformKind kind, const ThetaCombo& combo, const Cplx& tau_in,
                          const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const Cplx tau = promoted(tau_in);
    require_upper(tau, "s_transform_residual");
    const Cplx minus_inv = -(Cplx(Real(1)) / tau);

    switch (kind) {
        case STransformKind::false0:
            if (combo.k != 0) throw error("s_transform_residual: false0 needs k = 0");
            break;
        case STransformKind::false1:
            if (combo.k != 1) throw error("s_transform_residual: false1 needs k = 1");
            if (abs(combo.weight_sum()) > ctx.pow10(-ctx.digits))
                throw combination_not_cuspidal(
                    "s_transform_residual: false1 needs sum a_j = 0");
            break;
        case STransformKind::false_general:
            break;
        default:
            throw error("s_transform_residual: ordinary kinds take a ThetaClass");
    }

    // LHS false theta at -1/tau, direct lattice sums
    Cplx lhs = false_theta_combo_eval(combo, minus_inv, ctx);

    std::vector<Cplx> g = phase_coefficients(combo.M, combo.terms, ctx);
    Cplx mid = false_middle_term(combo.M, combo.k, g, tau, ctx);

    ThetaCombo upper{combo.M, combo.k + 1, combo.terms};
    Cplx rhs = eichler_integral(upper, tau, ctx);

    return lhs + mid - rhs;
}

} // namespace hblocks
