#include "hblocks/hblock.hpp"

#include <cmath>

#include "hblocks/combinatorics.hpp"

namespace hblocks {

namespace {

// an exponent bound no finite enumeration reaches; P(q) is complete everywhere
Rational unbounded_cutoff() { return Rational(Integer(1) << 62); }

Rational pow_ll(long long base, unsigned e) {
    Rational acc(1);
    for (unsigned i = 0; i < e; ++i) acc *= base;
    return acc;
}

// smallest m >= bound with m = residue (mod modulus)
long long first_congruent_geq(long long residue, long long modulus, long long bound) {
    long long delta = bound - residue;
    long long steps = delta / modulus;
    long long m = residue + steps * modulus;
    while (m < bound) m += modulus;
    while (m - modulus >= bound) m -= modulus;
    return m;
}

} // namespace

RationalQSeries psi_series(const SeifertData& data, const Rational& cutoff) {
    if (!(cutoff > 0)) throw error("psi_series: cutoff must be positive");
    const long long twoP = data.two_p();
    RationalQSeries out(4 * data.P, cutoff);
    for (const SectorData& sec : all_sectors(data)) {
        const int sign = sec.sign();
        for (long long m = 0;; ++m) {
            long long mj = twoP * (m + sec.m0) + sec.ell;
            Rational e(mj * mj, 4 * data.P);
            if (mj > 0 && e > cutoff) break;
            if (e <= cutoff)
                out.add(e, Rational(sign) * Rational(binomial(
                                static_cast<unsigned long long>(m) + data.n - 3, data.n - 3)));
        }
    }
    return out;
}

RationalQSeries psi_series_stirling(const SeifertData& data, const Rational& cutoff,
                                    StirlingExpansion direction) {
    if (!(cutoff > 0)) throw error("psi_series_stirling: cutoff must be positive");
    const long long twoP = data.two_p();
    const unsigned n = static_cast<unsigned>(data.n);
    RationalQSeries out(4 * data.P, cutoff);
    const Rational inv_fact(1, factorial(n - 3));

    for (const SectorData& sec : all_sectors(data)) {
        const int sign = sec.sign();
        // inner coefficient sum_{l=k}^{n-3} (-ell-2Pm0)^{l-k}/(2P)^l [[n-2,l+1]] binom(l,k)
        std::vector<Rational> ck(n - 2);
        for (unsigned k = 0; k + 3 <= n; ++k) {
            Rational acc = 0;
            for (unsigned l = k; l + 3 <= n; ++l) {
                Rational shift(-sec.ell - twoP * sec.m0);
                Rational pw(1);
                for (unsigned i = 0; i < l - k; ++i) pw *= shift;
                acc += pw / pow_ll(twoP, l) * Rational(stirling1(n - 2, l + 1)) *
                       Rational(binomial(l, k));
            }
            ck[k] = acc * inv_fact * sign;
        }

        auto emit_ray = [&](long long start, long long step, int overall) {
            for (long long m = start;; m += step) {
                Rational e(m * m, 4 * data.P);
                bool receding = (step > 0) ? (m > 0) : (m < 0);
                if (receding && e > cutoff) break;
                if (e > cutoff) continue;
                Rational mk(1);
                Rational coeff = 0;
                for (unsigned k = 0; k + 3 <= n; ++k) {
                    coeff += ck[k] * mk;
                    mk *= m;
                }
                out.add(e, overall * coeff);
            }
        };

        if (direction == StirlingExpansion::forward)
            emit_ray(twoP * sec.m0 + sec.ell, twoP, +1);
        else
            emit_ray(twoP * (sec.m0 - data.n + 2) + sec.ell, -twoP, -1);
    }
    return out;
}

namespace {

int sgn_eps(long long m, long long lo, long long hi) {
    if (m >= hi) return 1;
    if (m <= lo) return -1;
    return 0;
}

int sgn_int(long long m) { return (m > 0) - (m < 0); }

} // namespace

RationalQSeries p_polynomial(const SeifertData& data) {
    const long long twoP = data.two_p();
    RationalQSeries out(4 * data.P, unbounded_cutoff());
    for (const SectorData& sec : all_sectors(data)) {
        const int sign = sec.sign();
        const long long hi = twoP * sec.m0 + sec.ell;
        const long long lo = twoP * (sec.m0 - data.n + 2) + sec.ell;
        std::vector<Rational> ck(data.n - 2);
        for (unsigned k = 0; k + 3 <= static_cast<unsigned>(data.n); ++k)
            ck[k] = c_coeff(data, sec.epsilon, k);

        // sgn_eps(m) - sgn(m) is supported inside [min(lo,0), max(hi,0)]
        long long from = std::min(lo, 0ll), to = std::max(hi, 0ll);
        for (long long m = first_congruent_geq(sec.ell, twoP, from); m <= to; m += twoP) {
            int w = sgn_eps(m, lo, hi) - sgn_int(m);
            if (w == 0) continue;
            Rational mk(1);
            Rational coeff = 0;
            for (unsigned k = 0; k + 3 <= static_cast<unsigned>(data.n); ++k) {
                coeff += ck[k] * mk;
                mk *= m;
            }
            out.add(Rational(m * m, 4 * data.P), Rational(sign * w, 2) * coeff);
        }
    }
    return out;
}

RationalQSeries psi_decomposed_series(const SeifertData& data, const Rational& cutoff) {
    if (!(cutoff > 0)) throw error("psi_decomposed_series: cutoff must be positive");
    const long long twoP = data.two_p();
    RationalQSeries out(4 * data.P, cutoff);
    // |m| <= sqrt(cutoff * 4P)
    long long mmax = 0;
    while (Rational(mmax * mmax, 4 * data.P) <= cutoff) ++mmax;

    for (const SectorData& sec : all_sectors(data)) {
        const int sign = sec.sign();
        std::vector<Rational> ck(data.n - 2);
        for (unsigned k = 0; k + 3 <= static_cast<unsigned>(data.n); ++k)
            ck[k] = c_coeff(data, sec.epsilon, k);
        for (long long m = first_congruent_geq(sec.ell, twoP, -mmax); m <= mmax; m += twoP) {
            if (m == 0) continue;
            Rational e(m * m, 4 * data.P);
            if (e > cutoff) continue;
            Rational mk(1);
            Rational coeff = 0;
            for (unsigned k = 0; k + 3 <= static_cast<unsigned>(data.n); ++k) {
                coeff += ck[k] * mk;
                mk *= m;
            }
            out.add(e, Rational(sign * sgn_int(m), 2) * coeff);
        }
    }
    return out;
}

Cplx eval_phi(const SeifertData& data, const Cplx& q_in, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const Cplx q = promoted(q_in);
    if (q.is_zero()) throw unit_circle_input("eval_phi: q must be nonzero");
    const Real aq = abs(q);
    if (aq >= 1) throw unit_circle_input("eval_phi: requires |q| < 1");

    // how far the lattice walk must go: |q|^{m^2/4P} below the tail target
    const double t = -log(aq).convert_to<double>();
    const double need = (ctx.digits + ctx.tail_margin + 5) * std::log(10.0);
    const double m_estimate = std::sqrt(need * 4.0 * static_cast<double>(data.P) / t);
    if (m_estimate > 2e8)
        throw slow_convergence(
            "eval_phi: |q| too close to 1 for the digit budget; lattice cutoff would be about " +
            std::to_string(static_cast<long long>(m_estimate)));

    const Cplx logq = log(q);
    const long long fourP = 4 * data.P;
    const Cplx Qr = exp(logq / Real(fourP)); // q^{1/4P}
    const Cplx Qstep = powi(Qr, 8 * data.P * data.P);
    const Real tol = ctx.truncation_tol() / 4;
    const long long twoP = data.two_p();

    Cplx psi;
    for (const SectorData& sec : all_sectors(data)) {
        const int sign = sec.sign();
        long long mj = twoP * sec.m0 + sec.ell;
        Cplx T = powi(Qr, mj * mj);
        Cplx U = powi(Qr, 4 * data.P * mj + 4 * data.P * data.P);
        int streak = 0;
        for (long long m = 0;; ++m) {
            Real coeff(binomial(static_cast<unsigned long long>(m) + data.n - 3, data.n - 3));
            Cplx term = coeff * T;
            psi += sign > 0 ? term : -term;
            if (mj > 0 && abs(term) < tol) {
                if (++streak >= 2) break;
            } else {
                streak = 0;
            }
            T *= U;
            U *= Qstep;
            mj += twoP;
        }
    }

    Cplx half = exp(logq / Real(2));
    Cplx pref = Cplx(Real(1)) / (Real(2) * (half - Cplx(Real(1)) / half));
    if (data.n % 2 == 1) pref = -pref;
    pref *= exp(logq * to_real(-data.theta0 / 4));
    return pref * psi;
}

PsiHatEvaluator::PsiHatEvaluator(SeifertData data)
    : data_(std::move(data)), sectors_(all_sectors(data_)) {
    c_.resize(sectors_.size());
    for (std::size_t s = 0; s < sectors_.size(); ++s) {
        c_[s].resize(data_.n - 2);
        for (unsigned k = 0; k + 3 <= static_cast<unsigned>(data_.n); ++k)
            c_[s][k] = c_coeff(data_, sectors_[s].epsilon, k);
    }
}

const Rational& PsiHatEvaluator::coeff(std::size_t sector, unsigned k) const {
    return c_.at(sector).at(k);
}

ThetaCombo PsiHatEvaluator::weight_combo(unsigned k, const PrecisionCtx& ctx) const {
    PrecisionScope scope(ctx);
    ThetaCombo combo;
    combo.M = data_.two_p();
    combo.k = k;
    for (std::size_t s = 0; s < sectors_.size(); ++s)
        combo.terms.emplace_back(sectors_[s].ell,
                                 Cplx(to_real(Rational(sectors_[s].sign()) * c_[s][k])));
    return combo;
}

ThetaCombo PsiHatEvaluator::eta_combo(unsigned k, const PrecisionCtx& ctx) const {
    PrecisionScope scope(ctx);
    ThetaCombo combo;
    combo.M = data_.two_p();
    combo.k = k + 1;
    for (std::size_t s = 0; s < sectors_.size(); ++s)
        combo.terms.emplace_back(
            sectors_[s].ell,
            Cplx(to_real(Rational(-sectors_[s].sign(), 2) * c_[s][k])));
    return combo;
}

Cplx eval_psi_hat(const PsiHatEvaluator& ev, const Cplx& tau_in, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const Cplx tau = promoted(tau_in);
    const long long twoP = ev.seifert().two_p();
    Cplx acc;
    for (unsigned k = 0; k + 3 <= static_cast<unsigned>(ev.seifert().n); ++k) {
        Cplx part = false_theta_combo_eval(ev.weight_combo(k, ctx), tau, ctx);
        acc += pow(Real(twoP), Real(k) / 2) / 2 * part;
    }
    return acc;
}

Cplx psi_hat_s_rhs(const PsiHatEvaluator& ev, const Cplx& tau_in, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    const Cplx tau = promoted(tau_in);
    if (tau.re.is_zero()) throw error("psi_hat_s_rhs: requires Re(tau) != 0");
    if (!(tau.im > 0)) throw not_upper_half_plane("psi_hat_s_rhs: Im(tau) must be > 0");

    const long long twoP = ev.seifert().two_p();
    const Real sgn = tau.re > 0 ? Real(1) : Real(-1);
    Cplx total;
    for (unsigned k = 0; k + 3 <= static_cast<unsigned>(ev.seifert().n); ++k) {
        // eta~ block: -(1/2) sgn(Re tau) (2P)^{k/2} times the g-weighted
        // false S-transform RHS at tau
        ThetaCombo combo = ev.weight_combo(k, ctx);
        std::vector<Cplx> g = phase_coefficients(twoP, combo.terms, ctx);
        Cplx middle = s_transform_rhs(twoP, k, g, tau, ctx, /*false_variant=*/true);
        total += Real(-0.5) * sgn * pow(Real(twoP), Real(k) / 2) * middle;

        // Eichler block: i (2P)^{k/2} int eta_{k+1} / sqrt(-i(z+1/tau))
        //              = -(2P)^{k/2} eichler_integral(eta-combo)
        Cplx integral = eichler_integral(ev.eta_combo(k, ctx), tau, ctx);
        total -= pow(Real(twoP), Real(k) / 2) * integral;
    }
    return total;
}

Cplx eval_at_root_of_unity(const RationalQSeries& series, long long K, const PrecisionCtx& ctx) {
    PrecisionScope scope(ctx);
    if (K < 1) throw k_too_small("eval_at_root_of_unity: K must be >= 1");
    Real two_pi = 2 * pi_const();
    Cplx acc;
    for (const auto& [e, c] : series.terms())
        acc += to_real(c) * expi(two_pi * to_real(frac_part(e / K)));
    return acc;
}

} // namespace hblocks
