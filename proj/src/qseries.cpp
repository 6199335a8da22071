#include "hblocks/qseries.hpp"

#include <algorithm>

namespace hblocks {

RationalQSeries::RationalQSeries(long long denom, Rational cutoff)
    : denom_(denom), cutoff_(std::move(cutoff)) {
    if (denom_ <= 0) throw error("RationalQSeries: denominator must be positive");
}

void RationalQSeries::add(const Rational& exponent, const Rational& coefficient) {
    if (coefficient.is_zero()) return;
    if (denominator(exponent * denom_) != 1)
        throw error("RationalQSeries: exponent denominator does not divide " +
                    std::to_string(denom_));
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
        terms_.emplace(exponent, coefficient);
        return;
    }
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
}

Rational RationalQSeries::coefficient(const Rational& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

const Rational& RationalQSeries::lowest_exponent() const {
    if (terms_.empty()) throw error("RationalQSeries: empty series");
    return terms_.begin()->first;
}

RationalQSeries RationalQSeries::operator-(const RationalQSeries& other) const {
    if (denom_ != other.denom_)
        throw error("RationalQSeries: mismatched exponent denominators");
    RationalQSeries out(denom_, std::min(cutoff_, other.cutoff_));
    for (const auto& [e, c] : terms_) out.add(e, c);
    for (const auto& [e, c] : other.terms_) out.add(e, -c);
    return out;
}

RationalQSeries RationalQSeries::operator+(const RationalQSeries& other) const {
    if (denom_ != other.denom_)
        throw error("RationalQSeries: mismatched exponent denominators");
    RationalQSeries out(denom_, std::min(cutoff_, other.cutoff_));
    for (const auto& [e, c] : terms_) out.add(e, c);
    for (const auto& [e, c] : other.terms_) out.add(e, c);
    return out;
}

bool RationalQSeries::operator==(const RationalQSeries& other) const {
    return terms_ == other.terms_;
}

Cplx RationalQSeries::eval(const Cplx& q, const PrecisionCtx& ctx) const {
    PrecisionScope scope(ctx);
    Cplx logq = log(promoted(q));
    Cplx acc;
    for (const auto& [e, c] : terms_) acc += to_real(c) * exp(to_real(e) * logq);
    return acc;
}

} // namespace hblocks
