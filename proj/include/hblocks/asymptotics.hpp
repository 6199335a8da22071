#pragma once

#include <string>
#include <vector>

#include "hblocks/hblock.hpp"

namespace hblocks {

// Complex-valued periodic function on Z, sampled over one period at working
// precision. Houses the C_{k,K} and C~_k families.
struct PeriodicFn {
    long long period = 1;
    std::vector<Cplx> values; // values[r] = C(r), r = 0..period-1
    std::string label;

    const Cplx& at(long long m) const {
        return values[static_cast<std::size_t>(((m % period) + period) % period)];
    }
    Cplx sum_over_period() const {
        Cplx s;
        for (const Cplx& v : values) s += v;
        return s;
    }
    Cplx mean() const { return sum_over_period() / Real(period); }
};

// C~_k(m) = sum_eps eps_1...eps_n c_eps(k) e^{2 pi i ell m / 2P}, period 2P
PeriodicFn periodic_C_tilde(const SeifertData& data, unsigned k, const PrecisionCtx& ctx);
// C_{k,K}(m) = e^{2 pi i (-m^2 K/4P)} C~_k(m); throws mean_value_not_zero when
// the mean-zero invariant fails beyond 10^-(digits-10)
PeriodicFn periodic_C(const SeifertData& data, unsigned k, long long K, const PrecisionCtx& ctx);

// L(-r, C) = -(M^r/(r+1)) sum_{m=1}^M C(m) B_{r+1}(m/M) for mean-zero C
Cplx l_value(const PeriodicFn& C, unsigned r, const PrecisionCtx& ctx);

// lim_{t->0+} eta~_{k,r}(-K+it) =
//   (2P)^{r+iota/2}/(2(2r+iota+1)) sum_{m=1}^{2P}
//   (C_{k,K}(m) - (-1)^k C_{k,K}(-m)) B_{2r+iota+1}(m/2P)
Cplx eta_tilde_limit(const SeifertData& data, unsigned k, unsigned r, long long K,
                     const PrecisionCtx& ctx);

// oscillatory coefficients of the large-K expansion
Cplx alpha_coeff(const SeifertData& data, unsigned k, unsigned r, long long m,
                 const PrecisionCtx& ctx);
// tail coefficients beta_r, computed by tanh-sinh quadrature on (0,infinity)
Cplx beta_coeff(const SeifertData& data, unsigned r, const PrecisionCtx& ctx);

// Exact radial-limit WRT invariant tau_K through the S-transformation of
// Psi^ evaluated at tau -> -K (principal branch from the upper half-plane).
Cplx wrt_exact(const SeifertData& data, long long K, const PrecisionCtx& ctx);

// The radial series behaves like a power series in K^2 t, so the ladder must
// reach K^2 t << 1 with enough columns; these defaults hold |error| below
// 1e-20 through K = 10 at 50 digits.
struct RichardsonParams {
    Rational t0 = Rational(1, 16);
    int rungs = 20;
    int order = 8;
};

struct ExtrapolationResult {
    Cplx value;
    Real error_estimate;
    // |T_{j,0} - T_{j-1,0}|: raw radial convergence, decreasing in j
    std::vector<Real> raw_deltas;
    // |T_{j,order} - T_{j-1,order}|: extrapolated column deltas
    std::vector<Real> extrapolated_deltas;
};

// Independent route to tau_K: Phi(e^{2 pi i/K} e^{-t}) on the geometric
// ladder t = t0 2^{-j}, Richardson-extrapolated in t.
ExtrapolationResult wrt_extrapolate(const SeifertData& data, long long K,
                                    const PrecisionCtx& ctx,
                                    const RichardsonParams& params = {});

// The large-K expansion of sqrt(2/K) xi_K^{Theta0/4} sin(pi/K) tau_K:
// oscillatory terms grouped by Chern-Simons phase class, the beta tail, and
// the K^{-1/2} P(xi_K) term.
struct AsymptoticExpansion {
    struct OscTerm {
        Rational phase;  // in [0,1): the class of -m^2/4P mod 1
        unsigned kpower; // kappa + iota + r
        Cplx coeff;
    };
    std::vector<OscTerm> oscillatory; // sorted by (phase, kpower)
    std::vector<Cplx> beta_tail;      // beta_0 .. beta_order
    Cplx p_term_coeff;                // (-1)^n/(2 sqrt2 i), or 0 when excluded
    bool include_p_term = true;

    // aggregated coefficient at (phase, kpower); 0 when absent
    Cplx coefficient(const Rational& phase, unsigned kpower) const;
};

AsymptoticExpansion asymptotic_expansion(const SeifertData& data, int beta_order,
                                         bool include_p_term, const PrecisionCtx& ctx);

// numeric value of the expansion at integer K
Cplx asymptotic_eval(const AsymptoticExpansion& exp, const SeifertData& data, long long K,
                     const PrecisionCtx& ctx);
// only the K^{n-3} stratum of the oscillatory part
Cplx asymptotic_leading_stratum(const AsymptoticExpansion& exp, const SeifertData& data,
                                long long K, const PrecisionCtx& ctx);

// leading asymptotics of sqrt(2/K) sin(pi/K) tau_K: the m-indexed form and
// the flat-connection (Chern-Simons grouped) form; they agree identically
Cplx leading_term(const SeifertData& data, long long K, const PrecisionCtx& ctx);
Cplx cs_grouped_leading(const SeifertData& data, long long K, const PrecisionCtx& ctx);

// strict membership in the open tetrahedron
// T_{1/2} = {(x,y,z) in [0,1/2]^3 : -z < x-y < z, z < x+y < 1-z};
// inputs meeting any face with equality raise boundary_point
bool tetra_membership(const Rational& x, const Rational& y, const Rational& z);

} // namespace hblocks
