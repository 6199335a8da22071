#include "hblocks/combinatorics.hpp"

#include <mutex>

namespace hblocks {

namespace {

// memoized triangle rows; guarded because callers may run concurrently
std::mutex stirling_mutex;
std::vector<std::vector<Integer>>& stirling_rows() {
    static std::vector<std::vector<Integer>> rows{{Integer(1)}}; // row 0: [[0,0]] = 1
    return rows;
}

std::mutex bernoulli_mutex;
std::vector<Rational>& bernoulli_numbers_cache() {
    static std::vector<Rational> nums{Rational(1)}; // B_0 = 1
    return nums;
}

// Bernoulli numbers B_j (B_1 = -1/2) via
// sum_{j=0}^{m} binom(m+1, j) B_j = 0 for m >= 1.
Rational bernoulli_number(unsigned m) {
    std::lock_guard<std::mutex> lock(bernoulli_mutex);
    auto& nums = bernoulli_numbers_cache();
    while (nums.size() <= m) {
        unsigned mm = static_cast<unsigned>(nums.size());
        Rational acc = 0;
        for (unsigned j = 0; j < mm; ++j)
            acc += Rational(binomial(mm + 1, j)) * nums[j];
        nums.push_back(-acc / Rational(Integer(mm) + 1));
    }
    return nums[m];
}

} // namespace

Integer stirling1(unsigned nn, unsigned kk) {
    std::lock_guard<std::mutex> lock(stirling_mutex);
    auto& rows = stirling_rows();
    while (rows.size() <= nn) {
        unsigned n = static_cast<unsigned>(rows.size()) - 1;
        const auto& prev = rows[n];
        std::vector<Integer> next(n + 2, Integer(0));
        for (unsigned k = 1; k <= n + 1; ++k) {
            Integer val = (k >= 1 && k - 1 < prev.size()) ? prev[k - 1] : Integer(0);
            if (k < prev.size()) val += Integer(n) * prev[k];
            next[k] = val;
        }
        rows.push_back(std::move(next));
    }
    if (kk >= rows[nn].size()) return Integer(0);
    return rows[nn][kk];
}

Integer binomial(unsigned long long n, unsigned long long k) {
    if (k > n) return Integer(0);
    if (k > n - k) k = n - k;
    Integer acc(1);
    for (unsigned long long i = 0; i < k; ++i) {
        acc *= Integer(n - i);
        acc /= Integer(i + 1); // exact at every step
    }
    return acc;
}

Rational binomial_integer(long long x, unsigned nn) {
    Rational acc(1);
    for (unsigned i = 0; i < nn; ++i) acc *= Rational(x - static_cast<long long>(i));
    return acc / Rational(factorial(nn));
}

Integer factorial(unsigned n) {
    Integer acc(1);
    for (unsigned i = 2; i <= n; ++i) acc *= i;
    return acc;
}

Integer double_factorial_odd(long long n) {
    if (n <= 0) return Integer(1); // covers (-1)!! = 1
    Integer acc(1);
    for (long long i = n; i >= 1; i -= 2) acc *= i;
    return acc;
}

Rational RationalPolynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

void RationalPolynomial::trim() {
    while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
}

RationalPolynomial bernoulli_poly(unsigned m) {
    // B_m(x) = sum_j binom(m,j) B_j x^{m-j}
    RationalPolynomial poly;
    poly.coeffs.assign(m + 1, Rational(0));
    for (unsigned j = 0; j <= m; ++j)
        poly.coeffs[m - j] = Rational(binomial(m, j)) * bernoulli_number(j);
    poly.trim();
    return poly;
}

Rational bernoulli_periodic(unsigned m, const Rational& x) {
    return bernoulli_poly(m)(frac_part(x));
}

Cplx DCoeff::value(const PrecisionCtx& ctx) const {
    if (coeff.is_zero()) return Cplx();
    (void)ctx;
    Cplx four_pi_i(Real(0), 4 * pi_const());
    return to_real(coeff) * powi(four_pi_i, r);
}

DCoeff d_coeff(unsigned kappa, unsigned iota, unsigned r) {
    if (iota > 1) throw error("d_coeff: iota must be 0 or 1");
    DCoeff d;
    d.kappa = kappa;
    d.iota = iota;
    d.r = r;
    if (r > kappa) {
        d.coeff = 0;
        return d;
    }
    Rational num(factorial(2 * kappa + iota));
    Rational den = Rational(Integer(1) << kappa) * Rational(factorial(kappa - r)) *
                   Rational(factorial(2 * r + iota));
    d.coeff = num / den;
    return d;
}

Rational c_coeff(const SeifertData& data, const std::vector<int>& epsilon, unsigned k) {
    const unsigned n = static_cast<unsigned>(data.n);
    if (k > n - 3) throw k_out_of_range("c_coeff: need 0 <= k <= n-3");
    if (epsilon.size() != n) throw error("c_coeff: epsilon length mismatch");

    // n - 2 + sum_j eps_j/p_j = (2P m0 + ell)/P
    Rational shift(data.n - 2);
    for (unsigned j = 0; j < n; ++j) shift += Rational(epsilon[j], data.p[j]);

    Rational sum = 0;
    for (unsigned l = k; l <= n - 3; ++l) {
        // (-2)^{-l}
        Rational term((l % 2 == 0) ? 1 : -1, Integer(1) << l);
        Rational pw(1);
        for (unsigned i = 0; i < l - k; ++i) pw *= shift;
        sum += term * pw * Rational(stirling1(n - 2, l + 1)) * Rational(binomial(l, k));
    }
    Rational front = Rational((k % 2 == 0) ? 1 : -1);
    Integer Pk(1);
    for (unsigned i = 0; i < k; ++i) Pk *= data.P;
    front /= Rational(Pk) * Rational(factorial(n - 3));
    return front * sum;
}

Rational ep_sum_vanishes(const SeifertData& data, unsigned k) {
    Rational acc = 0;
    for (const SectorData& sec : all_sectors(data))
        acc += sec.sign() * c_coeff(data, sec.epsilon, k);
    return acc;
}

} // namespace hblocks
