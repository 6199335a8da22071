#pragma once

#include <stdexcept>
#include <string>

namespace hblocks {

// Base class for all domain errors raised by the library. The CLI maps
// these to exit code 1; anything else escaping is a bug.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

#define HBLOCKS_DEFINE_ERROR(name)                                            \
    class name : public error {                                               \
    public:                                                                   \
        explicit name(const std::string& msg) : error(msg) {}                 \
    }

// seifert
HBLOCKS_DEFINE_ERROR(too_few_fibers);
HBLOCKS_DEFINE_ERROR(fiber_too_small);
HBLOCKS_DEFINE_ERROR(not_coprime);
HBLOCKS_DEFINE_ERROR(homology_condition_failed);
HBLOCKS_DEFINE_ERROR(not_coprime_args);
HBLOCKS_DEFINE_ERROR(out_of_range_label);

// combinatorics
HBLOCKS_DEFINE_ERROR(k_out_of_range);

// theta / quadrature
HBLOCKS_DEFINE_ERROR(not_upper_half_plane);
HBLOCKS_DEFINE_ERROR(quadrature_not_converged);
HBLOCKS_DEFINE_ERROR(combination_not_cuspidal);

// hblock
HBLOCKS_DEFINE_ERROR(unit_circle_input);
HBLOCKS_DEFINE_ERROR(slow_convergence);

// asymptotics
HBLOCKS_DEFINE_ERROR(mean_value_not_zero);
HBLOCKS_DEFINE_ERROR(k_too_small);
HBLOCKS_DEFINE_ERROR(extrapolation_unstable);
HBLOCKS_DEFINE_ERROR(boundary_point);

// precision plumbing
HBLOCKS_DEFINE_ERROR(invalid_precision);

#undef HBLOCKS_DEFINE_ERROR

} // namespace hblocks
