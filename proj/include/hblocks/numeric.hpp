#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "hblocks/errors.hpp"

namespace hblocks {

namespace mp = boost::multiprecision;

// Arbitrary-precision scalar types. Real carries a thread-local default
// precision; every public operation opens a PrecisionScope so that all
// temporaries are created at the working precision of its PrecisionCtx.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

// Working-precision context. `digits` is the number of decimal digits the
// caller wants to trust, `tail_margin` the guard digits that absorb series
// truncation and quadrature error. Identities are asserted to
// 10^-(digits-10); internal arithmetic runs at digits + 2*tail_margin.
struct PrecisionCtx {
    int digits = 50;
    int tail_margin = 10;

    PrecisionCtx() = default;
    explicit PrecisionCtx(int d, int t = 10) : digits(d), tail_margin(t) {
        if (digits < 20)
            throw invalid_precision("PrecisionCtx: digits must be >= 20");
        if (tail_margin < 1)
            throw invalid_precision("PrecisionCtx: tail_margin must be >= 1");
    }

    int working_digits() const { return digits + 2 * tail_margin; }

    // 10^e at working precision.
    Real pow10(long e) const;

    // target for dropping series tails
    Real truncation_tol() const { return pow10(-(digits + tail_margin)); }
    // residual bound for exact identities checked numerically
    Real identity_tol() const { return pow10(-(digits - 10)); }
    // convergence target for quadratures
    Real quad_tol() const { return pow10(-(digits + 4)); }
};

// RAII guard: sets the thread's default Real precision for the duration of
// a library call.
class PrecisionScope {
public:
    explicit PrecisionScope(const PrecisionCtx& ctx)
        : prev_(Real::default_precision()) {
        Real::default_precision(static_cast<unsigned>(ctx.working_digits()));
    }
    ~PrecisionScope() { Real::default_precision(prev_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned prev_;
};

Real pi_const();

inline Real to_real(const Rational& x) { return Real(x); }
inline Real to_real(const Integer& x) { return Real(x); }

// Raise x to at least the active working precision, value preserved. Binary
// operations inherit the larger operand precision, so caller-supplied values
// built at a lower default would otherwise seed low-precision intermediates;
// every public entry point promotes its floating inputs first.
inline Real promoted(Real x) {
    unsigned wd = Real::default_precision();
    if (x.precision() < wd) x.precision(wd);
    return x;
}

// x - floor(x), exact
Rational frac_part(const Rational& x);
Integer floor_div(const Integer& a, const Integer& b);

// canonical "a/b" (or plain integer) parsing for CLI inputs
Rational parse_rational(const std::string& s);

} // namespace hblocks
