#include <doctest.h>

#include "hblocks/qseries.hpp"

using namespace hblocks;

TEST_CASE("rational q-series bookkeeping") {
    RationalQSeries s(120, Rational(10));
    s.add(Rational(1, 120), Rational(2));
    s.add(Rational(1, 120), Rational(-2)); // cancels away entirely
    CHECK(s.empty());

    s.add(Rational(1, 120), Rational(1));
    s.add(Rational(3, 40), Rational(5, 2)); // 9/120
    CHECK(s.size() == 2);
    CHECK(s.lowest_exponent() == Rational(1, 120));
    CHECK(s.coefficient(Rational(9, 120)) == Rational(5, 2));
    CHECK(s.coefficient(Rational(7, 120)) == 0);

    CHECK_THROWS_AS(s.add(Rational(1, 7), Rational(1)), error);

    RationalQSeries t(120, Rational(5));
    t.add(Rational(1, 120), Rational(1));
    auto diff = s - t;
    CHECK(diff.cutoff() == Rational(5));
    CHECK(diff.size() == 1);
    CHECK(diff.coefficient(Rational(9, 120)) == Rational(5, 2));

    RationalQSeries other(60, Rational(5));
    CHECK_THROWS_AS(s - other, error);
}

TEST_CASE("series evaluation uses the principal branch") {
    PrecisionCtx ctx(40);
    RationalQSeries s(4, Rational(10));
    s.add(Rational(1, 2), Rational(1));
    // q = -1/4 + 0i: principal sqrt gives +i/2
    Cplx v = s.eval(Cplx(Real(-1) / 4), ctx);
    PrecisionScope scope(ctx);
    CHECK(abs(v - Cplx(Real(0), Real(1) / 2)) < ctx.identity_tol());
}
