#pragma once

#include <vector>

#include "hblocks/complex.hpp"
#include "hblocks/numeric.hpp"
#include "hblocks/seifert.hpp"

namespace hblocks {

// Unsigned Stirling numbers of the first kind [[n,k]]:
// [[0,0]] = 1, [[n,0]] = [[0,k]] = 0 (n,k >= 1),
// [[n+1,k]] = [[n,k-1]] + n [[n,k]].
Integer stirling1(unsigned nn, unsigned kk);

// binomial(n, k) for nonnegative integers
Integer binomial(unsigned long long n, unsigned long long k);

// Generalized binomial over an integer upper argument via the falling
// factorial x(x-1)...(x-nn+1)/nn!; handles negative x.
Rational binomial_integer(long long x, unsigned nn);

Integer factorial(unsigned n);
// odd double factorial with the empty-product convention (-1)!! = 1
Integer double_factorial_odd(long long n);

// Exact rational polynomial, coefficients in ascending degree.
struct RationalPolynomial {
    std::vector<Rational> coeffs;

    unsigned degree() const {
        return coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size() - 1);
    }
    Rational operator()(const Rational& x) const;
    void trim();
};

// m-th Bernoulli polynomial B_m(x), from sum B_m(x) t^m/m! = t e^{xt}/(e^t-1)
RationalPolynomial bernoulli_poly(unsigned m);
// periodic extension B_m(x - floor x)
Rational bernoulli_periodic(unsigned m, const Rational& x);

// d_{kappa,iota,r} = (4 pi i)^r (2kappa+iota)! / (2^kappa (kappa-r)! (2r+iota)!)
// for 0 <= r <= kappa, else 0. Stored as the exact rational factor times the
// symbolic power (4 pi i)^r; value() realizes it numerically.
struct DCoeff {
    unsigned kappa = 0;
    unsigned iota = 0;
    unsigned r = 0;
    Rational coeff;

    bool is_zero() const { return coeff.is_zero(); }
    Cplx value(const PrecisionCtx& ctx) const;
};

DCoeff d_coeff(unsigned kappa, unsigned iota, unsigned r);

// Sector decomposition coefficient
// c_eps(k) = (-1)^k/(P^k (n-3)!) sum_{l=k}^{n-3} (-2)^{-l}
//            (n-2+sum_j eps_j/p_j)^{l-k} [[n-2,l+1]] binom(l,k),
// exact; requires 0 <= k <= n-3.
Rational c_coeff(const SeifertData& data, const std::vector<int>& epsilon, unsigned k);

// sum over all sign vectors of eps_1...eps_n c_eps(k); identically 0, and the
// vanishing is what makes the false-theta combinations cuspidal. Returned
// exactly so callers can assert it.
Rational ep_sum_vanishes(const SeifertData& data, unsigned k);

} // namespace hblocks
