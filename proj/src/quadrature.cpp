#include "hblocks/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace hblocks {

namespace {

// One tanh-sinh node: abscissa given as the pair (x, 1-x) plus weight.
// x(t) = 1/(1+e^{-2u}) with u = (pi/2) sinh t, so
// 1-x(t) = 1/(1+e^{2u}) and dx/dt = (pi/2) cosh(t) / (2 cosh^2 u).
struct TSNode {
    Real x;
    Real one_minus_x;
    Real weight;
};

TSNode ts_node(const Real& t) {
    Real pi = pi_const();
    Real u = pi / 2 * sinh(t);
    Real e2u = exp(2 * u);
    TSNode node;
    node.x = 1 / (1 + 1 / e2u);
    node.one_minus_x = 1 / (1 + e2u);
    Real ch = cosh(u);
    node.weight = pi / 2 * cosh(t) / (2 * ch * ch);
    return node;
}

} // namespace

QuadResult tanh_sinh_01(const std::function<Cplx(const Real&, const Real&)>& f,
                        const PrecisionCtx& ctx, const Real& abs_tol, int max_level) {
    PrecisionScope scope(ctx);

    // clip t where the weight alone is below the target
    double digits = static_cast<double>(ctx.working_digits() + 8);
    double tmax_d = std::asinh((digits * std::log(10.0) + 12.0) * 2.0 / 3.14159265358979);
    Real tmax(tmax_d + 0.25);

    QuadResult res;
    Real h(1);
    Cplx sum;
    // level 0: t = 0, +-h, +-2h, ...
    {
        TSNode n0 = ts_node(Real(0));
        sum = n0.weight * f(n0.x, n0.one_minus_x);
        res.evaluations++;
        for (Real t = h; t <= tmax; t += h) {
            TSNode np = ts_node(t);
            TSNode nm = ts_node(-t);
            sum += np.weight * f(np.x, np.one_minus_x);
            sum += nm.weight * f(nm.x, nm.one_minus_x);
            res.evaluations += 2;
        }
    }
    Cplx estimate = sum * h;
    Real last_delta = abs(estimate) + 1;

    for (int level = 1; level <= max_level; ++level) {
        h /= 2;
        // new nodes at odd multiples of h
        for (Real t = h; t <= tmax; t += 2 * h) {
            TSNode np = ts_node(t);
            TSNode nm = ts_node(-t);
            sum += np.weight * f(np.x, np.one_minus_x);
            sum += nm.weight * f(nm.x, nm.one_minus_x);
            res.evaluations += 2;
        }
        Cplx next = sum * h;
        last_delta = abs(next - estimate);
        estimate = next;
        res.levels = level;
        if (level >= 3 && last_delta < abs_tol) {
            res.value = estimate;
            res.error_estimate = last_delta;
            return res;
        }
    }
    throw quadrature_not_converged("tanh_sinh_01: no convergence after " +
                                   std::to_string(max_level) + " levels (last delta " +
                                   last_delta.str(3) + ")");
}

namespace {

struct GLRule {
    std::vector<Real> nodes;   // on (-1,1), full set
    std::vector<Real> weights;
};

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre_pair(int n, const Real& x, Real& pn, Real& dpn) {
    Real p0(1), p1 = x;
    for (int j = 2; j <= n; ++j) {
        Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    pn = p1;
    dpn = n * (x * p1 - p0) / (x * x - 1);
}

const GLRule& legendre_rule(int n, const PrecisionCtx& ctx) {
    static std::map<std::pair<int, int>, GLRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(n, ctx.working_digits());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    GLRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    int newton_steps = 2;
    {
        // quadratic convergence; the asymptotic seed is good to ~10 bits
        double need = ctx.working_digits() * std::log2(10.0);
        double have = 10;
        while (have < need) {
            have *= 2;
            newton_steps++;
        }
    }
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double seed = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        Real x(seed);
        Real pn, dpn;
        for (int it2 = 0; it2 < newton_steps; ++it2) {
            legendre_pair(n, x, pn, dpn);
            x -= pn / dpn;
        }
        legendre_pair(n, x, pn, dpn);
        Real w = 2 / ((1 - x * x) * dpn * dpn);
        rule.nodes[i] = -x; // seeds descend from +1; store ascending
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    auto [pos, inserted] = cache.emplace(key, std::move(rule));
    return pos->second;
}

} // namespace

QuadResult gauss_legendre_01(const std::function<Cplx(const Real&)>& f,
                             const PrecisionCtx& ctx, const Real& abs_tol, int max_nodes) {
    PrecisionScope scope(ctx);
    QuadResult res;
    Cplx prev;
    bool have_prev = false;
    for (int n = 16; n <= max_nodes; n *= 2) {
        const GLRule& rule = legendre_rule(n, ctx);
        Cplx acc;
        for (int i = 0; i < n; ++i) {
            Real x = (rule.nodes[i] + 1) / 2;
            acc += rule.weights[i] * f(x);
        }
        acc *= Real(0.5);
        res.evaluations += static_cast<std::size_t>(n);
        res.levels++;
        if (have_prev) {
            Real delta = abs(acc - prev);
            if (delta < abs_tol) {
                res.value = acc;
                res.error_estimate = delta;
                return res;
            }
        }
        prev = acc;
        have_prev = true;
    }
    throw quadrature_not_converged("gauss_legendre_01: not stable with " +
                                   std::to_string(max_nodes) + " nodes");
}

} // namespace hblocks
