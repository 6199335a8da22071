#pragma once

#include <vector>

#include "hblocks/qseries.hpp"
#include "hblocks/seifert.hpp"
#include "hblocks/theta.hpp"

namespace hblocks {

// Exact coefficients of Psi(q) up to the exponent cutoff, from the defining
// sum over sign sectors: sector (m0, ell) contributes
// binom(m+n-3, n-3) q^{(2P(m+m0)+ell)^2/4P} for m >= 0.
RationalQSeries psi_series(const SeifertData& data, const Rational& cutoff);

enum class StirlingExpansion { forward, backward };

// The two Stirling-number expansions of Psi(q): forward sums the ray
// m >= 2P m0 + ell, backward sums m <= 2P(m0-n+2)+ell with an overall sign.
// Both agree with psi_series term by term.
RationalQSeries psi_series_stirling(const SeifertData& data, const Rational& cutoff,
                                    StirlingExpansion direction);

// The finite polynomial P(q) weighted by sgn_eps(m) - sgn(m); complete at
// every exponent.
RationalQSeries p_polynomial(const SeifertData& data);

// Psi - P expanded from the false-theta side: sector eps and weight k
// contribute (1/2) eps c_eps(k) sgn(m) m^k at exponent m^2/4P over
// m = ell (mod 2P).
RationalQSeries psi_decomposed_series(const SeifertData& data, const Rational& cutoff);

// Phi(q) = (-1)^n/(2(q^{1/2}-q^{-1/2})) q^{-Theta0/4} Psi(q) for 0 < |q| < 1,
// all powers on the principal branch of log q.
Cplx eval_phi(const SeifertData& data, const Cplx& q, const PrecisionCtx& ctx);

// Precomputed sector data and c_eps(k) tables for
// Psi^(tau) = 1/2 sum_eps eps sum_k (2P)^{k/2} c_eps(k) theta~_{k, ell/sqrt(2P)}(tau).
class PsiHatEvaluator {
public:
    explicit PsiHatEvaluator(SeifertData data);

    const SeifertData& seifert() const { return data_; }
    const std::vector<SectorData>& sectors() const { return sectors_; }
    const Rational& coeff(std::size_t sector, unsigned k) const;

    // false-theta combination of Psi^ at weight k: terms (ell_eps, eps c_eps(k)),
    // to be scaled by (1/2)(2P)^{k/2}
    ThetaCombo weight_combo(unsigned k, const PrecisionCtx& ctx) const;
    // combination under the Eichler integral: eta at theta weight k+1 with
    // coefficients -1/2 eps c_eps(k)
    ThetaCombo eta_combo(unsigned k, const PrecisionCtx& ctx) const;

private:
    SeifertData data_;
    std::vector<SectorData> sectors_;
    std::vector<std::vector<Rational>> c_; // c_[sector][k]
};

// direct false-theta evaluation of Psi^(tau)
Cplx eval_psi_hat(const PsiHatEvaluator& ev, const Cplx& tau, const PrecisionCtx& ctx);

// Right-hand side of the S-transformation of Psi^: the value that equals
// eval_psi_hat(-1/tau). Requires Re(tau) != 0.
Cplx psi_hat_s_rhs(const PsiHatEvaluator& ev, const Cplx& tau, const PrecisionCtx& ctx);

// series value at q = e^{2 pi i /K}, phases reduced exactly
Cplx eval_at_root_of_unity(const RationalQSeries& series, long long K, const PrecisionCtx& ctx);

} // namespace hblocks
