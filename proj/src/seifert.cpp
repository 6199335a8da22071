#include "hblocks/seifert.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace hblocks {

namespace {

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

// modular inverse of a mod m, m >= 2, gcd(a,m) = 1
long long mod_inverse(long long a, long long m) {
    long long t = 0, new_t = 1;
    long long r = m, new_r = ((a % m) + m) % m;
    while (new_r != 0) {
        long long qq = r / new_r;
        long long tmp = t - qq * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - qq * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw not_coprime("mod_inverse: arguments not coprime");
    return ((t % m) + m) % m;
}

} // namespace

std::vector<long long> solve_surgery(const std::vector<long long>& p) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (p[i] < 2) throw fiber_too_small("solve_surgery: p_j < 2");
        for (std::size_t j = i + 1; j < n; ++j)
            if (gcd_ll(p[i], p[j]) != 1)
                throw not_coprime("solve_surgery: fibers not pairwise coprime");
    }
    long long P = 1;
    for (long long pj : p) P *= pj;

    // q_j = (P/p_j)^{-1} mod p_j, representative in (-p_j/2, p_j/2]
    std::vector<long long> q(n);
    for (std::size_t j = 0; j < n; ++j) {
        long long inv = mod_inverse(P / p[j], p[j]);
        if (2 * inv > p[j]) inv -= p[j];
        q[j] = inv;
    }
    // total is 1 mod P; shift q_1 by a multiple of p_1 to land exactly on 1
    long long total = 0;
    for (std::size_t j = 0; j < n; ++j) total += q[j] * (P / p[j]);
    long long c = (total - 1) / P;
    q[0] -= c * p[0];
    return q;
}

SeifertData validate_seifert(std::vector<long long> p, std::vector<long long> q) {
    if (p.size() != q.size())
        throw error("validate_seifert: p and q must have equal length");
    const int n = static_cast<int>(p.size());
    if (n < 3) throw too_few_fibers("validate_seifert: need n >= 3 fibers");
    for (long long pj : p)
        if (pj < 2) throw fiber_too_small("validate_seifert: every p_j must be >= 2");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (gcd_ll(p[i], p[j]) != 1)
                throw not_coprime("validate_seifert: p_" + std::to_string(i + 1) +
                                  " and p_" + std::to_string(j + 1) + " share a factor");

    long long P = 1;
    for (long long pj : p) P *= pj;
    long long total = 0;
    for (int j = 0; j < n; ++j) total += q[j] * (P / p[j]);
    if (total != 1)
        throw homology_condition_failed(
            "validate_seifert: P * sum q_j/p_j = " + std::to_string(total) + ", expected 1");

    // keep p_2..p_n odd: the (at most one) even fiber moves to the front
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
    for (int j = 1; j < n; ++j) {
        if (p[j] % 2 == 0) {
            std::rotate(p.begin(), p.begin() + j, p.begin() + j + 1);
            std::rotate(q.begin(), q.begin() + j, q.begin() + j + 1);
            std::rotate(perm.begin(), perm.begin() + j, perm.begin() + j + 1);
            break;
        }
    }

    SeifertData data;
    data.n = n;
    data.p = std::move(p);
    data.q = std::move(q);
    data.P = P;
    data.permutation = std::move(perm);

    Rational theta0 = Rational(3) - Rational(1, P);
    for (int j = 0; j < n; ++j)
        theta0 += 12 * dedekind_sum(data.q[j], data.p[j]);
    data.theta0 = theta0;
    return data;
}

SeifertData make_seifert(const std::vector<long long>& p) {
    if (p.size() < 3) throw too_few_fibers("make_seifert: need n >= 3 fibers");
    return validate_seifert(p, solve_surgery(p));
}

Rational dedekind_sum(long long q, long long p) {
    if (p < 1) throw not_coprime_args("dedekind_sum: p must be >= 1");
    if (p == 1) return Rational(0);
    long long a = ((q % p) + p) % p;
    if (gcd_ll(a, p) != 1)
        throw not_coprime_args("dedekind_sum: gcd(q,p) != 1");
    // s(a,b) = (a^2+b^2+1)/(12ab) - 1/4 - s(b mod a, a)
    Rational s = 0;
    long long b = p;
    int sign = 1;
    while (a != 0) {
        s += sign * (Rational(a * a + b * b + 1, 12 * a * b) - Rational(1, 4));
        sign = -sign;
        long long t = b % a;
        b = a;
        a = t;
    }
    return s;
}

int SectorData::sign() const {
    int s = 1;
    for (int e : epsilon) s *= e;
    return s;
}

SectorData sector_data(const SeifertData& data, const std::vector<int>& epsilon) {
    if (static_cast<int>(epsilon.size()) != data.n)
        throw error("sector_data: epsilon length mismatch");
    for (int e : epsilon)
        if (e != 1 && e != -1) throw error("sector_data: epsilon entries must be +-1");

    // T = P(n-2 + sum eps_j/p_j), an integer never divisible by 2P
    long long T = data.P * (data.n - 2);
    for (int j = 0; j < data.n; ++j) T += epsilon[j] * (data.P / data.p[j]);

    const long long twoP = data.two_p();
    long long ell = ((T % twoP) + twoP) % twoP;
    SectorData sec;
    sec.epsilon = epsilon;
    sec.ell = ell;
    sec.m0 = (T - ell) / twoP;
    return sec;
}

std::vector<SectorData> all_sectors(const SeifertData& data) {
    std::vector<SectorData> out;
    out.reserve(1u << data.n);
    for (unsigned b = 0; b < (1u << data.n); ++b) {
        std::vector<int> eps(data.n);
        for (int j = 0; j < data.n; ++j) eps[j] = (b >> j) & 1 ? -1 : 1;
        out.push_back(sector_data(data, eps));
    }
    return out;
}

namespace {

// the CRT representative m = P(l_1/p_1 + sum_{j>=2} 2 l_j/p_j)
long long label_residue(const SeifertData& data, const std::vector<long long>& l) {
    long long m = l[0] * (data.P / data.p[0]);
    for (int j = 1; j < data.n; ++j) m += 2 * l[j] * (data.P / data.p[j]);
    return m;
}

Rational cs_of_residue(long long m, long long P) {
    // [-m^2/4P] in [0,1)
    return frac_part(Rational(-m * m, 4 * P));
}

} // namespace

Rational cs_invariant(const SeifertData& data, const std::vector<long long>& l) {
    if (static_cast<int>(l.size()) != data.n)
        throw out_of_range_label("cs_invariant: label length mismatch");
    if (l[0] < 0 || l[0] > data.p[0])
        throw out_of_range_label("cs_invariant: l_1 out of range");
    for (int j = 1; j < data.n; ++j)
        if (l[j] < 0 || 2 * l[j] > data.p[j] - 1)
            throw out_of_range_label("cs_invariant: l_j out of range");
    return cs_of_residue(label_residue(data, l), data.P);
}

std::vector<FlatConnectionLabel> flat_connections(const SeifertData& data) {
    std::vector<FlatConnectionLabel> out;
    std::vector<long long> l(data.n, 0);
    // odometer over the box, lexicographic
    while (true) {
        int nonzero = 0;
        for (long long v : l) nonzero += (v != 0);
        if (nonzero >= 3) {
            FlatConnectionLabel lab;
            lab.l = l;
            lab.cs = cs_of_residue(label_residue(data, l), data.P);
            out.push_back(std::move(lab));
        }
        int j = data.n - 1;
        while (j >= 0) {
            long long hi = (j == 0) ? data.p[0] : (data.p[j] - 1) / 2;
            if (l[j] < hi) {
                ++l[j];
                break;
            }
            l[j] = 0;
            --j;
        }
        if (j < 0) break;
    }
    return out;
}

std::vector<Rational> nonzero_cs_spectrum(const SeifertData& data) {
    std::set<Rational> classes;
    for (long long m = 1; m <= data.two_p(); ++m) {
        int divisible = 0;
        for (long long pj : data.p) divisible += (m % pj == 0);
        if (divisible <= data.n - 3) classes.insert(cs_of_residue(m, data.P));
    }
    return std::vector<Rational>(classes.begin(), classes.end());
}

} // namespace hblocks
