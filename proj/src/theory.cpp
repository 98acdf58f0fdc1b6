#include "theory.hpp"

#include <cmath>

namespace lmp {

namespace {

constexpr double kClampBelow = 1e-300;

double binomial_coefficient(std::uint32_t n, std::uint32_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (std::uint32_t i = 0; i < k; ++i)
        c = c * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return c;
}

double condition_factor(std::uint32_t nu) {
    return std::pow((1.0 + 1.0 / std::sqrt(2.0 * nu)) * 2.0, 1.0 / (static_cast<double>(nu) - 1.0));
}

} // namespace

BiasCondition check_condition(double alpha, std::uint32_t d, double beta) {
    if (d < 5) fail(Errc::precondition, "condition requires d >= 5");
    if (!(alpha > 0.0 && alpha < 0.5)) fail(Errc::precondition, "alpha must lie in (0, 1/2)");
    // beta = 1 is allowed as a boundary query for alpha_max.
    if (!(beta > 0.0 && beta <= 1.0)) fail(Errc::precondition, "beta must lie in (0, 1]");

    BiasCondition c;
    c.alpha = alpha;
    c.d = d;
    c.nu = (d - 1) / 2;
    c.beta = beta;
    const double factor = condition_factor(c.nu);
    c.lhs = factor * 4.0 * alpha * (1.0 - alpha);
    c.satisfied = c.lhs < beta;
    // 4 a (1-a) = beta / factor, smaller quadratic root.
    const double rhs = beta / factor;
    if (rhs >= 1.0) {
        c.alpha_max = 0.5;
    } else {
        c.alpha_max = (1.0 - std::sqrt(1.0 - rhs)) / 2.0;
    }
    return c;
}

double recursion_step(double p, std::uint32_t nu) {
    if (!(p >= 0.0 && p <= 1.0)) fail(Errc::precondition, "p must lie in [0, 1]");
    if (nu < 1) fail(Errc::precondition, "nu must be >= 1");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    const std::uint32_t m = 2 * nu;
    double sum = 0.0;
    for (std::uint32_t i = nu; i <= m; ++i) {
        double term = binomial_coefficient(m, i) * std::pow(p, static_cast<double>(i)) *
                      std::pow(1.0 - p, static_cast<double>(m - i));
        sum += term;
    }
    return std::min(sum, 1.0);
}

RecursionTrace recursion_trace(double alpha, std::uint32_t nu, std::uint32_t t_max) {
    if (!(alpha > 0.0 && alpha < 0.5)) fail(Errc::precondition, "alpha must lie in (0, 1/2)");
    if (nu < 2) fail(Errc::precondition, "nu must be >= 2");
    if (t_max < 1) fail(Errc::precondition, "t_max must be >= 1");

    RecursionTrace tr;
    tr.alpha = alpha;
    tr.nu = nu;
    tr.lhs = condition_factor(nu) * 4.0 * alpha * (1.0 - alpha);

    const double log_lhs = std::log(tr.lhs);
    const double log_clamp = std::log(kClampBelow);

    tr.p.resize(t_max + 1);
    tr.bound.resize(t_max + 1);
    tr.dominated.resize(t_max + 1);
    tr.clamped.resize(t_max + 1);

    double p = alpha;
    for (std::uint32_t t = 0; t <= t_max; ++t) {
        if (t > 0) p = recursion_step(p, nu);
        bool p_clamped = false;
        if (p != 0.0 && p < kClampBelow) {
            p = 0.0;
            p_clamped = true;
        }
        const double nu_pow_t = std::pow(static_cast<double>(nu), static_cast<double>(t));
        const double log_bound = nu_pow_t * log_lhs + std::log(0.25);
        double bound;
        bool bound_clamped = false;
        if (log_bound < log_clamp) {
            bound = 0.0;
            bound_clamped = true;
        } else {
            bound = 0.25 * std::exp(nu_pow_t * log_lhs);
        }
        tr.p[t] = p;
        tr.bound[t] = bound;
        tr.dominated[t] = p <= bound || (p_clamped && bound_clamped) || (p == 0.0 && bound_clamped);
        tr.clamped[t] = p_clamped || bound_clamped;
    }

    tr.first_step_bound = 0.5 * (1.0 + 1.0 / std::sqrt(2.0 * nu)) *
                          std::pow(4.0 * alpha * (1.0 - alpha), static_cast<double>(nu));
    tr.first_step_ok = tr.p[1] <= tr.first_step_bound;
    return tr;
}

double tree_population(std::uint32_t d, std::uint32_t h) {
    if (d < 3) fail(Errc::precondition, "tree population requires d >= 3 (formula singular at d = 2)");
    const double dd = d;
    return 1.0 + dd * (std::pow(dd - 1.0, static_cast<double>(h)) - 1.0) / (dd - 2.0);
}

double hypergeometric_at_least(std::uint32_t total, std::uint32_t marked,
                               std::uint32_t draws, std::uint32_t need) {
    if (marked > total || draws > total)
        fail(Errc::precondition, "hypergeometric parameters out of range");
    const double denom = binomial_coefficient(total, draws);
    double sum = 0.0;
    for (std::uint32_t i = need; i <= std::min(draws, marked); ++i) {
        if (draws - i > total - marked) continue;
        sum += binomial_coefficient(marked, i) * binomial_coefficient(total - marked, draws - i);
    }
    return sum / denom;
}

double complete_graph_red_probability(std::uint32_t n, std::uint32_t k,
                                      std::uint32_t r, bool vertex_is_red) {
    if (vertex_is_red && r == 0)
        fail(Errc::precondition, "no red vertex exists when r = 0");
    const std::uint32_t red_pool = vertex_is_red ? r - 1 : r;
    const std::uint32_t majority = (k + 1) / 2;
    return hypergeometric_at_least(n - 1, red_pool, k, majority);
}

namespace {

// Solve A x = b by Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        if (std::abs(a[pivot][col]) < 1e-14)
            fail(Errc::internal, "singular linear system in absorption solve");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double f = a[row][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t row = n; row-- > 0;) {
        double s = b[row];
        for (std::size_t j = row + 1; j < n; ++j) s -= a[row][j] * x[j];
        x[row] = s / a[row][row];
    }
    return x;
}

std::vector<double> binomial_pmf(std::uint32_t n, double p) {
    std::vector<double> pmf(n + 1, 0.0);
    for (std::uint32_t i = 0; i <= n; ++i)
        pmf[i] = binomial_coefficient(n, i) * std::pow(p, static_cast<double>(i)) *
                 std::pow(1.0 - p, static_cast<double>(n - i));
    return pmf;
}

} // namespace

CompleteGraphChain complete_graph_chain(std::uint32_t n, std::uint32_t k, double alpha) {
    if (n > 25) fail(Errc::state_space, "exact chain limited to n <= 25");
    if (k % 2 == 0) fail(Errc::precondition, "k must be odd");
    if (k >= n) fail(Errc::precondition, "k must be < n");
    if (!(alpha >= 0.0 && alpha <= 1.0)) fail(Errc::precondition, "alpha must lie in [0, 1]");

    CompleteGraphChain chain;
    chain.n = n;
    chain.k = k;
    chain.alpha = alpha;
    chain.transition.assign(n + 1, std::vector<double>(n + 1, 0.0));

    for (std::uint32_t r = 0; r <= n; ++r) {
        const double pr = r > 0 ? complete_graph_red_probability(n, k, r, true) : 0.0;
        const double pb = r < n ? complete_graph_red_probability(n, k, r, false) : 0.0;
        // Next red count = Bin(r, pr) + Bin(n-r, pb), independent groups.
        const std::vector<double> from_red = binomial_pmf(r, pr);
        const std::vector<double> from_blue = binomial_pmf(n - r, pb);
        for (std::uint32_t i = 0; i <= r; ++i)
            for (std::uint32_t j = 0; j <= n - r; ++j)
                chain.transition[r][i + j] += from_red[i] * from_blue[j];
    }

    // Absorption into all-blue (state 0) and expected absorption time from
    // every transient state.
    const std::size_t nt = n > 1 ? n - 1 : 0; // transient states 1..n-1
    chain.absorb_blue.assign(n + 1, 0.0);
    chain.expected_time.assign(n + 1, 0.0);
    chain.absorb_blue[0] = 1.0;
    chain.absorb_blue[n] = 0.0;
    if (nt > 0) {
        std::vector<std::vector<double>> a(nt, std::vector<double>(nt, 0.0));
        std::vector<double> b_abs(nt, 0.0), b_time(nt, 0.0);
        for (std::size_t i = 0; i < nt; ++i) {
            const std::uint32_t r = static_cast<std::uint32_t>(i + 1);
            for (std::size_t j = 0; j < nt; ++j) {
                const std::uint32_t r2 = static_cast<std::uint32_t>(j + 1);
                a[i][j] = (i == j ? 1.0 : 0.0) - chain.transition[r][r2];
            }
            b_abs[i] = chain.transition[r][0];
            b_time[i] = 1.0;
        }
        const std::vector<double> x_abs = solve_linear(a, b_abs);
        const std::vector<double> x_time = solve_linear(a, b_time);
        for (std::size_t i = 0; i < nt; ++i) {
            chain.absorb_blue[i + 1] = x_abs[i];
            chain.expected_time[i + 1] = x_time[i];
        }
    }

    const std::vector<double> initial = binomial_pmf(n, alpha);
    for (std::uint32_t r = 0; r <= n; ++r) {
        chain.absorb_blue_from_initial += initial[r] * chain.absorb_blue[r];
        chain.expected_time_from_initial += initial[r] * chain.expected_time[r];
    }
    return chain;
}

} // namespace lmp
