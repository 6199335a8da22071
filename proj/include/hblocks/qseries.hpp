#pragma once

#include <map>

#include "hblocks/complex.hpp"
#include "hblocks/numeric.hpp"

namespace hblocks {

// Sparse q-series with exact rational exponents over a fixed common
// denominator and exact rational coefficients. Terms with exponent below
// the cutoff are final: producers guarantee that no admissible source term
// beyond the enumeration can land there. Zero coefficients are never stored.
class RationalQSeries {
public:
    RationalQSeries(long long denom, Rational cutoff);

    void add(const Rational& exponent, const Rational& coefficient);

    const std::map<Rational, Rational>& terms() const { return terms_; }
    long long denom() const { return denom_; }
    const Rational& cutoff() const { return cutoff_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    // 0 when the exponent is absent
    Rational coefficient(const Rational& exponent) const;
    // smallest stored exponent; series must be nonempty
    const Rational& lowest_exponent() const;

    RationalQSeries operator-(const RationalQSeries& other) const;
    RationalQSeries operator+(const RationalQSeries& other) const;
    bool operator==(const RationalQSeries& other) const;

    // sum of coeff * q^exponent with q^e = exp(e log q), principal log
    Cplx eval(const Cplx& q, const PrecisionCtx& ctx) const;

private:
    long long denom_;
    Rational cutoff_;
    std::map<Rational, Rational> terms_;
};

} // namespace hblocks
