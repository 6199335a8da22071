#include <doctest.h>

#include "hblocks/combinatorics.hpp"

using namespace hblocks;

namespace {

// Oracle: coefficients of t e^{xt}/(e^t - 1) by exact rational power-series
// division, independent of the recurrence used by bernoulli_poly. Returns
// B_m(x) as a polynomial (ascending powers of x).
std::vector<Rational> bernoulli_poly_oracle(unsigned m) {
    // e^{xt} = sum_j x^j t^j / j!; (e^t - 1)/t = sum_j t^j/(j+1)!
    // Series in t whose coefficients are polynomials in x; divide, then the
    // coefficient of t^m times m! is B_m(x).
    using Poly = std::vector<Rational>;
    auto sub_scaled = [](Poly& a, const Poly& b, const Rational& s) {
        if (a.size() < b.size()) a.resize(b.size(), Rational(0));
        for (std::size_t i = 0; i < b.size(); ++i) a[i] -= s * b[i];
    };
    std::vector<Poly> numer(m + 1), denom(m + 1), quot(m + 1);
    for (unsigned j = 0; j <= m; ++j) {
        numer[j] = Poly(j + 1, Rational(0));
        numer[j][j] = Rational(1, factorial(j)); // x^j/j!
        denom[j] = Poly{Rational(1, factorial(j + 1))};
    }
    for (unsigned j = 0; j <= m; ++j) {
        // quot[j] = (numer[j] - sum_{i<j} quot[i] denom[j-i]) / denom[0]
        Poly acc = numer[j];
        for (unsigned i = 0; i < j; ++i) {
            // acc -= quot[i] * denom[j-i] (denom entries are constants)
            sub_scaled(acc, quot[i], denom[j - i][0]);
        }
        for (Rational& c : acc) c /= denom[0][0];
        quot[j] = acc;
    }
    Poly out = quot[m];
    for (Rational& c : out) c *= Rational(factorial(m));
    out.resize(m + 1, Rational(0));
    return out;
}

} // namespace

TEST_CASE("unsigned Stirling numbers of the first kind") {
    CHECK(stirling1(0, 0) == 1);
    CHECK(stirling1(3, 1) == 2);
    for (unsigned n = 1; n <= 8; ++n) {
        CHECK(stirling1(n, 0) == 0);
        CHECK(stirling1(0, n) == 0);
    }
    // binom(x+n, n) = (1/n!) sum_l [[n+1, l+1]] x^l for integer x
    for (unsigned n = 0; n <= 8; ++n) {
        for (long long x = 0; x <= 20; ++x) {
            Rational rhs = 0;
            Rational xl = 1;
            for (unsigned l = 0; l <= n; ++l) {
                rhs += Rational(stirling1(n + 1, l + 1)) * xl;
                xl *= x;
            }
            rhs /= Rational(factorial(n));
            CHECK(binomial_integer(x + n, n) == rhs);
        }
    }
}

TEST_CASE("generalized binomial reflection") {
    // binom(-x-1, n) = (-1)^n binom(x+n, n)
    for (long long x = -3; x <= 10; ++x)
        for (unsigned n = 0; n <= 6; ++n) {
            Rational lhs = binomial_integer(-x - 1, n);
            Rational rhs = binomial_integer(x + n, n);
            if (n % 2 == 1) rhs = -rhs;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("Bernoulli polynomials against the generating-function oracle") {
    for (unsigned m = 0; m <= 10; ++m) {
        auto oracle = bernoulli_poly_oracle(m);
        auto poly = bernoulli_poly(m);
        for (unsigned j = 0; j <= m; ++j) {
            Rational got = j < poly.coeffs.size() ? poly.coeffs[j] : Rational(0);
            CHECK(got == oracle[j]);
        }
    }
    // named values
    auto b1 = bernoulli_poly(1);
    REQUIRE(b1.coeffs.size() == 2);
    CHECK(b1.coeffs[0] == Rational(-1, 2));
    CHECK(b1.coeffs[1] == 1);
    CHECK(bernoulli_poly(2)(Rational(0)) == Rational(1, 6));
    CHECK(bernoulli_periodic(1, Rational(5, 4)) == Rational(-1, 4));
}

TEST_CASE("d-coefficients: closed form, special values, recursion") {
    PrecisionCtx ctx(50);
    CHECK(d_coeff(0, 0, 0).coeff == 1);
    CHECK(d_coeff(0, 0, 0).r == 0);
    CHECK(d_coeff(1, 0, 2).is_zero());

    // d_{1,0,1} = 4 pi i * 2!/(2 * 0! * 2!) = 2 pi i
    {
        PrecisionScope scope(ctx);
        Cplx v = d_coeff(1, 0, 1).value(ctx);
        Cplx expect(Real(0), 2 * pi_const());
        CHECK(abs(v - expect) < ctx.identity_tol());
    }

    // recursion d_{kappa+1,iota,r} = 2((kappa+iota+r+1/2) d_{kappa,iota,r} + pi i d_{kappa,iota,r-1})
    // in the (rational, (4 pi i)^r) representation:
    // c_{kappa+1,r} = (2(kappa+iota+r)+1) c_{kappa,r} + c_{kappa,r-1}/2
    for (unsigned iota = 0; iota <= 1; ++iota)
        for (unsigned kappa = 0; kappa < 10; ++kappa)
            for (unsigned r = 0; r <= kappa + 1; ++r) {
                Rational lhs = d_coeff(kappa + 1, iota, r).coeff;
                Rational rhs =
                    Rational(2 * (kappa + iota + r) + 1) * d_coeff(kappa, iota, r).coeff;
                if (r >= 1) rhs += d_coeff(kappa, iota, r - 1).coeff / 2;
                CHECK(lhs == rhs);
            }
}

TEST_CASE("sector coefficients c_eps(k)") {
    auto d235 = make_seifert({2, 3, 5});
    for (const SectorData& sec : all_sectors(d235))
        CHECK(c_coeff(d235, sec.epsilon, 0) == 1); // n = 3: single term l = 0

    auto d2357 = make_seifert({2, 3, 5, 7});
    // direct formula evaluation for one sector, k = 1, n = 4:
    // c_eps(1) = (-1)/(P * 1!) * (-2)^{-1} [[2,2]] binom(1,1) = 1/(2P)
    std::vector<int> eps(4, 1);
    CHECK(c_coeff(d2357, eps, 1) == Rational(1, 2 * d2357.P));
    CHECK_THROWS_AS(c_coeff(d2357, eps, 2), k_out_of_range);

    // k = n-3 value: (+1/(2P))^{n-3}/(n-3)! independent of eps
    for (const SectorData& sec : all_sectors(d2357))
        CHECK(c_coeff(d2357, sec.epsilon, 1) == Rational(1, 2 * d2357.P));
}

TEST_CASE("sum over sign vectors of eps c_eps(k) vanishes") {
    CHECK(ep_sum_vanishes(make_seifert({2, 3, 5}), 0).is_zero());
    auto d2357 = make_seifert({2, 3, 5, 7});
    CHECK(ep_sum_vanishes(d2357, 0).is_zero());
    CHECK(ep_sum_vanishes(d2357, 1).is_zero());
    auto d5 = make_seifert({2, 3, 5, 7, 11});
    CHECK(ep_sum_vanishes(d5, 0).is_zero());
    CHECK(ep_sum_vanishes(d5, 1).is_zero());
    CHECK(ep_sum_vanishes(d5, 2).is_zero());
}
