#include "hblocks/numeric.hpp"

#include <boost/math/constants/constants.hpp>

namespace hblocks {

Real PrecisionCtx::pow10(long e) const {
    Real ten(10);
    if (e >= 0) return pow(ten, static_cast<unsigned long>(e));
    return Real(1) / pow(ten, static_cast<unsigned long>(-e));
}

Real pi_const() { return boost::math::constants::pi<Real>(); }

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b; // truncates toward zero
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Rational frac_part(const Rational& x) {
    Integer num = numerator(x);
    Integer den = denominator(x);
    Integer fl = floor_div(num, den);
    return x - Rational(fl);
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw error("empty rational literal");
    // mpq accepts "a/b" and "a"; reject anything else explicitly so CLI
    // errors stay readable
    std::size_t slash = s.find('/');
    auto check_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!check_int(s)) throw error("bad rational literal: " + s);
        return Rational(Integer(s));
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!check_int(a) || !check_int(b) || Integer(b) == 0)
        throw error("bad rational literal: " + s);
    return Rational(Integer(a), Integer(b));
}

} // namespace hblocks
