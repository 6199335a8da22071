#pragma once

#include <functional>
#include <vector>

#include "hblocks/complex.hpp"
#include "hblocks/numeric.hpp"

namespace hblocks {

struct QuadResult {
    Cplx value;
    Real error_estimate;
    int levels = 0;
    std::size_t evaluations = 0;
};

// tanh-sinh rule on (0,1), doubling the node density until two successive
// levels agree to abs_tol. The integrand receives x and 1-x separately so
// endpoint-sensitive callers never lose digits to cancellation; integrable
// endpoint singularities and double-exponential endpoint decay are fine.
QuadResult tanh_sinh_01(const std::function<Cplx(const Real& x, const Real& one_minus_x)>& f,
                        const PrecisionCtx& ctx, const Real& abs_tol, int max_level = 11);

// Gauss-Legendre on [0,1] with node-count doubling until stable to abs_tol.
// Intended for integrands analytic on a neighbourhood of the segment.
QuadResult gauss_legendre_01(const std::function<Cplx(const Real& x)>& f,
                             const PrecisionCtx& ctx, const Real& abs_tol,
                             int max_nodes = 4096);

} // namespace hblocks
