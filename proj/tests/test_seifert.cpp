#include <doctest.h>

#include <numeric>
#include <set>

#include "hblocks/seifert.hpp"

using namespace hblocks;

TEST_CASE("validate_seifert accepts and rejects correctly") {
    auto data = validate_seifert({2, 3, 5}, {1, 1, -4});
    CHECK(data.P == 30);
    CHECK(data.n == 3);
    CHECK(data.theta0 == Rational(181, 30));

    CHECK_THROWS_AS(validate_seifert({2, 3, 5}, {1, 1, 1}), homology_condition_failed);
    CHECK_THROWS_AS(validate_seifert({2, 4, 5}, {1, 1, 1}), not_coprime);
    CHECK_THROWS_AS(validate_seifert({2, 3}, {1, 1}), too_few_fibers);
    CHECK_THROWS_AS(validate_seifert({1, 3, 5}, {1, 1, 1}), fiber_too_small);
}

TEST_CASE("solve_surgery produces canonical exact solutions") {
    for (auto p : {std::vector<long long>{2, 3, 5}, {2, 3, 7}, {4, 3, 5}, {2, 3, 5, 7}}) {
        auto q = solve_surgery(p);
        long long P = 1;
        for (long long v : p) P *= v;
        long long total = 0;
        for (std::size_t j = 0; j < p.size(); ++j) total += q[j] * (P / p[j]);
        CHECK(total == 1);
        for (long long v : q) CHECK(v != 0);
        CHECK(solve_surgery(p) == q); // deterministic
    }
    CHECK_THROWS_AS(solve_surgery({2, 4, 5}), not_coprime);
}

TEST_CASE("fiber reordering keeps p_2..p_n odd and preserves theta0") {
    auto data = make_seifert({3, 4, 5});
    CHECK(data.p == std::vector<long long>{4, 3, 5});
    CHECK(data.permutation == std::vector<int>{1, 0, 2});
    CHECK(data.theta0 == make_seifert({4, 3, 5}).theta0);
    CHECK(data.theta0 == Rational(49, 60)); // matches the xi^{49/240} prefactor
}

TEST_CASE("Dedekind sums: reciprocity values and the cotangent oracle") {
    CHECK(dedekind_sum(1, 2) == 0);
    CHECK(dedekind_sum(1, 3) == Rational(1, 18));
    CHECK(dedekind_sum(1, 5) == Rational(1, 5));
    CHECK_THROWS_AS(dedekind_sum(2, 4), not_coprime_args);

    // s(1,p) = (p-1)(p-2)/(12p)
    for (long long p = 1; p <= 40; ++p)
        CHECK(dedekind_sum(1, p) == Rational((p - 1) * (p - 2), 12 * p));

    // against the defining cotangent sum at 50 digits
    PrecisionCtx ctx(50);
    PrecisionScope scope(ctx);
    Real pi = pi_const();
    Real worst(0);
    for (long long p = 2; p <= 50; ++p) {
        for (long long q = 1; q < p; ++q) {
            if (std::gcd(q, p) != 1) continue;
            Real sum(0);
            for (long long l = 1; l < p; ++l)
                sum += cos(pi * l / p) / sin(pi * l / p) * cos(pi * l * q / p) / sin(pi * l * q / p);
            sum /= 4 * p;
            Real diff = to_real(dedekind_sum(q, p)) - sum;
            if (abs(Cplx(diff)) > worst) worst = abs(Cplx(diff));
        }
    }
    CHECK(worst < ctx.identity_tol());
}

TEST_CASE("sector data reproduces the (2,3,5) table") {
    auto data = make_seifert({2, 3, 5});
    auto get = [&](int e1, int e2, int e3) { return sector_data(data, {e1, e2, e3}); };
    CHECK(get(+1, +1, +1).m0 == 1);
    CHECK(get(+1, +1, +1).ell == 1);
    CHECK(get(+1, +1, -1).m0 == 0);
    CHECK(get(+1, +1, -1).ell == 49);
    CHECK(get(+1, -1, +1).ell == 41);
    CHECK(get(-1, +1, +1).ell == 31);
    CHECK(get(+1, -1, -1).ell == 29);
    CHECK(get(-1, +1, -1).ell == 19);
    CHECK(get(-1, -1, +1).ell == 11);
    CHECK(get(-1, -1, -1).m0 == -1);
    CHECK(get(-1, -1, -1).ell == 59);
}

TEST_CASE("sector identity and sign-flip symmetry hold exactly") {
    for (auto pvec : {std::vector<long long>{2, 3, 5}, {2, 3, 5, 7}, {4, 3, 5}}) {
        auto data = make_seifert(pvec);
        for (const SectorData& sec : all_sectors(data)) {
            long long T = data.P * (data.n - 2);
            for (int j = 0; j < data.n; ++j) T += sec.epsilon[j] * (data.P / data.p[j]);
            CHECK(T == 2 * data.P * sec.m0 + sec.ell);
            CHECK(sec.ell >= 1);
            CHECK(sec.ell <= 2 * data.P - 1);

            std::vector<int> flipped;
            for (int e : sec.epsilon) flipped.push_back(-e);
            auto neg = sector_data(data, flipped);
            CHECK(neg.m0 == data.n - 3 - sec.m0);
            CHECK(neg.ell == 2 * data.P - sec.ell);
        }
    }
}

TEST_CASE("Chern-Simons invariants of flat connection labels") {
    auto data = make_seifert({2, 3, 5});
    // m = P(l1/p1 + 2 l2/p2 + 2 l3/p3): (1,1,1) -> 47, (1,1,2) -> 59
    CHECK(cs_invariant(data, {1, 1, 1}) == Rational(71, 120));  // [-47^2/120]
    CHECK(cs_invariant(data, {1, 1, 2}) == Rational(119, 120)); // [-59^2/120] = [-1/120]
    CHECK_THROWS_AS(cs_invariant(data, {3, 1, 1}), out_of_range_label);
    CHECK_THROWS_AS(cs_invariant(data, {1, 2, 1}), out_of_range_label);

    auto labels = flat_connections(data);
    REQUIRE(labels.size() == 4); // l1 in {1,2}, l2 = 1, l3 in {1,2}
    for (const auto& lab : labels) {
        CHECK(lab.l[1] == 1);
        CHECK((lab.l[0] == 1 || lab.l[0] == 2));
    }
    // labels with l1 = p1 = 2 are sine-killed; the surviving phases are the
    // classes of -1/120 and -49/120
    std::set<Rational> surviving;
    for (const auto& lab : labels)
        if (lab.l[0] != 2) surviving.insert(lab.cs);
    CHECK(surviving == std::set<Rational>{Rational(71, 120), Rational(119, 120)});
    // all-zero label is excluded from L
    for (const auto& lab : labels) {
        int nonzero = 0;
        for (long long v : lab.l) nonzero += (v != 0);
        CHECK(nonzero >= 3);
    }
}

TEST_CASE("flat connection enumeration matches the brute-force box count") {
    auto data = make_seifert({2, 3, 5, 7});
    long long expected = 0;
    for (long long l1 = 0; l1 <= data.p[0]; ++l1)
        for (long long l2 = 0; 2 * l2 <= data.p[1] - 1; ++l2)
            for (long long l3 = 0; 2 * l3 <= data.p[2] - 1; ++l3)
                for (long long l4 = 0; 2 * l4 <= data.p[3] - 1; ++l4) {
                    int nonzero = (l1 != 0) + (l2 != 0) + (l3 != 0) + (l4 != 0);
                    if (nonzero >= 3) ++expected;
                }
    CHECK(static_cast<long long>(flat_connections(data).size()) == expected);

    // n = 3 box bound
    auto d = make_seifert({4, 3, 5});
    CHECK(static_cast<long long>(flat_connections(d).size()) <=
          d.p[0] * ((d.p[1] - 1) / 2) * ((d.p[2] - 1) / 2) + d.p[0] + d.p[1] + d.p[2]);
}

TEST_CASE("nonzero Chern-Simons spectrum") {
    auto d235 = make_seifert({2, 3, 5});
    auto spec = nonzero_cs_spectrum(d235);
    CHECK(spec == std::vector<Rational>{Rational(71, 120), Rational(119, 120)});

    // (4,3,5): contains the classes of the four oscillatory phases
    // e^{-121/120 pi i K}, e^{-49/120 pi i K}, e^{-1/30 pi i K}, e^{-49/30 pi i K}
    auto d435 = make_seifert({4, 3, 5});
    auto spec435 = nonzero_cs_spectrum(d435);
    std::set<Rational> set435(spec435.begin(), spec435.end());
    for (long num : {-121, -49, -4, -196})
        CHECK(set435.count(frac_part(Rational(num, 240))) == 1);

    // m = P contributes nothing (divisible by every p_j)
    for (const Rational& r : spec)
        CHECK(r != frac_part(Rational(-d235.P * d235.P, 4 * d235.P)));
}

TEST_CASE("CRT sign-twist bijection on Z/2P") {
    for (auto pvec : {std::vector<long long>{2, 3, 5}, {2, 3, 5, 7}}) {
        auto data = make_seifert(pvec);
        const long long twoP = 2 * data.P;
        for (const SectorData& sec : all_sectors(data)) {
            std::set<long long> image;
            for (long long m = 0; m < twoP; ++m) {
                // unique x mod 2P with x = eps_j m (mod 2 p_j) for all j
                long long found = -1;
                for (long long x = 0; x < twoP; ++x) {
                    bool ok = true;
                    for (int j = 0; j < data.n; ++j)
                        ok = ok && ((x - sec.epsilon[j] * m) % (2 * data.p[j]) == 0);
                    if (ok) {
                        found = x;
                        break;
                    }
                }
                REQUIRE(found >= 0);
                image.insert(found);
            }
            CHECK(image.size() == static_cast<std::size_t>(twoP));
        }
    }
}

TEST_CASE("CS phase is independent of sign flips") {
    for (auto pvec : {std::vector<long long>{2, 3, 5}, {4, 3, 5}}) {
        auto data = make_seifert(pvec);
        for (const auto& lab : flat_connections(data)) {
            long long base = -1;
            for (unsigned b = 0; b < (1u << data.n); ++b) {
                long long m = 0;
                for (int j = 0; j < data.n; ++j) {
                    int eps = (b >> j) & 1 ? -1 : 1;
                    long long coef = (j == 0) ? 1 : 2;
                    m += eps * coef * lab.l[j] * (data.P / data.p[j]);
                }
                long long sq = ((m * m) % (4 * data.P) + 4 * data.P) % (4 * data.P);
                if (base < 0) base = sq;
                CHECK(sq == base);
            }
        }
    }
}
