#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "hblocks/complex.hpp"
#include "hblocks/numeric.hpp"

namespace hblocks {

// Index class of theta_{k, nu/sqrt(M)} on the lattice sqrt(M) Z:
//   theta_{k,mu}(tau)        = sum_{m = nu mod M} (m/sqrt M)^k e^{pi i m^2 tau / M}
//   theta~_{k,mu}(tau) (false) has an extra sgn(m), sgn(0) = 0.
struct ThetaClass {
    long long M;
    unsigned k;
    long long nu;

    ThetaClass(long long M_, unsigned k_, long long nu_);
};

// Finite combination sum_j a_j theta_{k, nu_j/sqrt(M)} (same M and weight).
struct ThetaCombo {
    long long M = 1;
    unsigned k = 0;
    std::vector<std::pair<long long, Cplx>> terms; // (nu_j, a_j)

    Cplx weight_sum() const;
};

// e^{2 pi i t/M} for t = 0..M-1 at the current working precision (cached)
std::shared_ptr<const std::vector<Cplx>> unit_roots(long long M, const PrecisionCtx& ctx);

// g[nu] = sum_j a_j e^{2 pi i nu_j nu / M}, the residue-phase coefficients a
// combination contributes to the S-transformed side
std::vector<Cplx> phase_coefficients(long long M,
                                     const std::vector<std::pair<long long, Cplx>>& terms,
                                     const PrecisionCtx& ctx);

// Assembled right-hand side of the weight-mixing S-transformation,
//   (-1)^iota (-i)^{1/2}/sqrt(M) * tau^{kappa+iota+1/2}/(2 pi i)^kappa
//   * sum_nu g[nu] sum_{r<=kappa} d_{kappa,iota,r} tau^r theta_{2r+iota,nu}(tau)
// with k = 2 kappa + iota; false_variant swaps in the sgn-twisted thetas.
Cplx s_transform_rhs(long long M, unsigned k, const std::vector<Cplx>& g, const Cplx& tau,
                     const PrecisionCtx& ctx, bool false_variant);

// table[i][nu] = theta_{weights[i], nu/sqrt(M)}(tau), all residues in one
// lattice scan; false_variant selects the sgn-twisted sums
std::vector<std::vector<Cplx>> theta_table(long long M, const std::vector<unsigned>& weights,
                                           const Cplx& tau, const PrecisionCtx& ctx,
                                           bool false_variant);

// direct summation with the truncation contract 10^-(digits+tail_margin)
Cplx theta_eval_direct(const ThetaClass& c, const Cplx& tau, const PrecisionCtx& ctx);
// evaluation through the weight-mixing S-transformation at -1/tau
Cplx theta_eval_transformed(const ThetaClass& c, const Cplx& tau, const PrecisionCtx& ctx);
// picks whichever of the two routes converges faster
Cplx theta_eval(const ThetaClass& c, const Cplx& tau, const PrecisionCtx& ctx);

struct FalseThetaResult {
    Cplx value;
    Real truncation_error; // bound on the dropped tail; no modular shortcut exists
};
FalseThetaResult false_theta_eval_full(const ThetaClass& c, const Cplx& tau,
                                       const PrecisionCtx& ctx);
Cplx false_theta_eval(const ThetaClass& c, const Cplx& tau, const PrecisionCtx& ctx);

Cplx false_theta_combo_eval(const ThetaCombo& combo, const Cplx& tau, const PrecisionCtx& ctx);
Cplx theta_combo_eval(const ThetaCombo& combo, const Cplx& tau, const PrecisionCtx& ctx);

// Two-variable completion Theta^_{k,mu}(tau, w), evaluated through the
// erf-as-integral form -2i sqrt(i(w-tau)) int_0^1 theta_{k+1,mu}(tau+(w-tau)t^2) dt
// with Gauss-Legendre node doubling.
Cplx theta_hat_eval(const ThetaClass& c, const Cplx& tau, const Cplx& w,
                    const PrecisionCtx& ctx);
// independent route: -i sgn(Re(w-tau)) int_tau^w theta_{k+1,mu}(z)/sqrt(-i(z-tau)) dz
Cplx theta_hat_line_integral(const ThetaClass& c, const Cplx& tau, const Cplx& w,
                             const PrecisionCtx& ctx);

// -i int_0^{i infty} theta_{combo.k, mu, a}(z) / sqrt(-i (z + 1/tau)) dz.
// combo.k is the theta weight under the integral. For even weight the
// combination must be cuspidal (sum a_j = 0), otherwise the integrand grows
// at z -> 0. Requires Re(tau) != 0.
Cplx eichler_integral(const ThetaCombo& combo, const Cplx& tau, const PrecisionCtx& ctx);

enum class STransformKind {
    ordinary01,       // Prop. for k = 0,1
    ordinary_general, // weight-mixing transform, any k
    false0,           // single class, k = 0
    false1,           // cuspidal combination, k = 1
    false_general     // combination, any k
};

// LHS - RHS of the named S-transformation identity, both sides evaluated
// independently. |residual| < 10^-(digits-10) is the contract.
Cplx s_transform_residual(STransformKind kind, const ThetaClass& c, const Cplx& tau,
                          const PrecisionCtx& ctx);
Cplx s_transform_residual(STransformKind kind, const ThetaCombo& combo, const Cplx& tau,
                          const PrecisionCtx& ctx);

} // namespace hblocks
