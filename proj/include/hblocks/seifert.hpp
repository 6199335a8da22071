#pragma once

#include <vector>

#include "hblocks/numeric.hpp"

namespace hblocks {

// Arithmetic data of a Seifert fibered integral homology sphere
// M(p1/q1, ..., pn/qn): pairwise coprime fibers p_j >= 2 and nonzero surgery
// integers q_j with P * sum_j q_j/p_j = 1 where P = p1...pn. Fibers are
// stored with p_2,...,p_n odd; the single even fiber, if present, sits in
// front. All values are immutable after validation.
struct SeifertData {
    int n = 0;
    std::vector<long long> p;
    std::vector<long long> q;
    long long P = 0;
    Rational theta0; // 3 - 1/P + 12 sum_j s(q_j, p_j)
    // slot j of p/q came from input position permutation[j]
    std::vector<int> permutation;

    long long two_p() const { return 2 * P; }
};

// Canonical solution of sum_j q_j P/p_j = 1: q_j is the representative of
// (P/p_j)^{-1} mod p_j in (-p_j/2, p_j/2] and q_1 absorbs the remaining
// multiple of P. Deterministic; requires pairwise coprime p_j >= 2.
std::vector<long long> solve_surgery(const std::vector<long long>& p);

SeifertData validate_seifert(std::vector<long long> p, std::vector<long long> q);

// validate with the canonical surgery coefficients
SeifertData make_seifert(const std::vector<long long>& p);

// Dedekind sum s(q,p) = 1/(4p) sum_{l=1}^{p-1} cot(pi l/p) cot(pi l q/p),
// computed exactly by the Euclidean reciprocity recursion.
Rational dedekind_sum(long long q, long long p);

// Per-sign-sector data: the unique m0, ell with
// P(n-2 + sum_j eps_j/p_j) = 2P m0 + ell and ell in {1,...,2P-1}.
struct SectorData {
    std::vector<int> epsilon;
    long long m0 = 0;
    long long ell = 0;

    int sign() const; // eps_1 ... eps_n
};

SectorData sector_data(const SeifertData& data, const std::vector<int>& epsilon);

// all 2^n sectors; sector index b has eps_j = +1 when bit j of b is clear
std::vector<SectorData> all_sectors(const SeifertData& data);

// Flat connection label: 0 <= l_1 <= p_1, 0 <= l_j <= (p_j-1)/2 for j >= 2,
// at least three nonzero components; cs is the Chern-Simons invariant in
// [0,1), cs = -(1/4P)(P(l_1/p_1 + sum_{j>=2} 2 l_j/p_j))^2 mod 1.
struct FlatConnectionLabel {
    std::vector<long long> l;
    Rational cs;
};

Rational cs_invariant(const SeifertData& data, const std::vector<long long>& l);

// all labels in the box with >= 3 nonzero components, lexicographic order
std::vector<FlatConnectionLabel> flat_connections(const SeifertData& data);

// { [-m^2/4P] in [0,1) : m divisible by at most n-3 of the p_j }, sorted
std::vector<Rational> nonzero_cs_spectrum(const SeifertData& data);

} // namespace hblocks
