#pragma once

#include "hblocks/numeric.hpp"

namespace hblocks {

// Arbitrary-precision complex numbers over Real. std::complex is only
// specified for the builtin floating types, and the branch conventions here
// are load-bearing, so we keep our own type: every multivalued function
// (log, sqrt, pow) uses the principal branch with arg in (-pi, pi]. This
// realizes arg sqrt(z) in (-pi/2, pi/2].
struct Cplx {
    Real re{0};
    Real im{0};

    Cplx() = default;
    Cplx(const Real& r) : re(r) {}
    Cplx(const Real& r, const Real& i) : re(r), im(i) {}
    Cplx(int r) : re(r) {}
    Cplx(long r) : re(r) {}
    Cplx(long long r) : re(r) {}
    Cplx(double r) : re(r) {}

    static Cplx i() { return Cplx(Real(0), Real(1)); }

    Cplx& operator+=(const Cplx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cplx& operator-=(const Cplx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Cplx& operator*=(const Cplx& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Cplx& operator*=(const Real& s) {
        re *= s;
        im *= s;
        return *this;
    }
    Cplx& operator/=(const Cplx& o);
    Cplx operator-() const { return Cplx(-re, -im); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
inline Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
inline Cplx operator*(Cplx a, const Cplx& b) { return a *= b; }
inline Cplx operator*(Cplx a, const Real& s) { return a *= s; }
inline Cplx operator*(const Real& s, Cplx a) { return a *= s; }

inline Real norm(const Cplx& z) { return z.re * z.re + z.im * z.im; }
inline Real abs(const Cplx& z) { return sqrt(norm(z)); }
inline Cplx conj(const Cplx& z) { return Cplx(z.re, -z.im); }
inline Real arg(const Cplx& z) { return atan2(z.im, z.re); }

inline Cplx& Cplx::operator/=(const Cplx& o) {
    Real d = norm(o);
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
}
inline Cplx operator/(Cplx a, const Cplx& b) { return a /= b; }
inline Cplx operator/(Cplx a, const Real& s) {
    a.re /= s;
    a.im /= s;
    return a;
}

inline Cplx polar(const Real& r, const Real& theta) {
    return Cplx(r * cos(theta), r * sin(theta));
}

inline Cplx exp(const Cplx& z) { return polar(exp(z.re), z.im); }

inline Cplx log(const Cplx& z) { return Cplx(log(abs(z)), arg(z)); }

inline Cplx sqrt(const Cplx& z) {
    if (z.is_zero()) return Cplx();
    return polar(sqrt(abs(z)), arg(z) / 2);
}

// integer power by binary exponentiation (no branch issues)
inline Cplx powi(const Cplx& z, long long e) {
    if (e < 0) return Cplx(Real(1)) / powi(z, -e);
    Cplx acc(Real(1));
    Cplx base = z;
    while (e > 0) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

inline Cplx pow(const Cplx& z, const Real& s) {
    if (z.is_zero()) return Cplx();
    return polar(pow(abs(z), s), arg(z) * s);
}

inline Cplx pow(const Cplx& z, const Cplx& s) {
    if (z.is_zero()) return Cplx();
    return exp(s * log(z));
}

inline Cplx expi(const Real& theta) { return Cplx(cos(theta), sin(theta)); }

inline Cplx promoted(Cplx z) {
    z.re = promoted(z.re);
    z.im = promoted(z.im);
    return z;
}

// e^{-i pi/4}, the principal value of (-i)^{1/2} = i^{-1/2}
inline Cplx minus_i_sqrt() {
    Real h = sqrt(Real(2)) / 2;
    return Cplx(h, -h);
}

} // namespace hblocks
