#include <doctest.h>

#include <cmath>

#include "theory.hpp"

using namespace lmp;

namespace {

// Brute-force binomial tail oracle for the recursion step.
double binomial_tail_oracle(double p, unsigned m, unsigned from) {
    auto comb = [](unsigned n, unsigned k) {
        double c = 1;
        for (unsigned i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
        return c;
    };
    double sum = 0;
    for (unsigned i = from; i <= m; ++i)
        sum += comb(m, i) * std::pow(p, i) * std::pow(1 - p, m - i);
    return sum;
}

} // namespace

TEST_SUITE_BEGIN("theory");

TEST_CASE("check_condition: worked examples") {
    const BiasCondition a = check_condition(0.05, 5, 0.6);
    CHECK(a.nu == 2);
    CHECK(a.lhs == doctest::Approx(0.57).epsilon(1e-12));
    CHECK(a.satisfied);

    const BiasCondition b = check_condition(0.25, 5, 0.99);
    CHECK(b.lhs == doctest::Approx(2.25).epsilon(1e-12));
    CHECK_FALSE(b.satisfied);

    const BiasCondition c = check_condition(0.05, 5, 1.0);
    CHECK(c.alpha_max == doctest::Approx((1.0 - std::sqrt(2.0 / 3.0)) / 2.0).epsilon(1e-12));
}

TEST_CASE("check_condition: alpha_max is the boundary") {
    for (std::uint32_t d : {5u, 7u, 9u, 13u}) {
        const double beta = 0.8;
        const double am = check_condition(0.01, d, beta).alpha_max;
        CHECK(am > 0.0);
        CHECK(am < 0.5);
        CHECK(check_condition(am * 0.999, d, beta).satisfied);
        CHECK_FALSE(check_condition(am * 1.001, d, beta).satisfied);
    }
}

TEST_CASE("check_condition: d < 5 rejected") {
    CHECK_THROWS_AS(check_condition(0.1, 4, 0.9), Error);
    CHECK_THROWS_AS(check_condition(0.6, 5, 0.9), Error);
}

TEST_CASE("recursion_step: fixed points and the exact 11/16") {
    CHECK(recursion_step(0.0, 2) == 0.0);
    CHECK(recursion_step(1.0, 2) == 1.0);
    CHECK(recursion_step(0.5, 2) == 11.0 / 16.0);
    for (std::uint32_t nu = 1; nu <= 10; ++nu) {
        CHECK(recursion_step(0.0, nu) == 0.0);
        CHECK(recursion_step(1.0, nu) == 1.0);
    }
}

TEST_CASE("recursion_step agrees with the binomial tail oracle") {
    for (std::uint32_t nu = 2; nu <= 10; ++nu) {
        for (int i = 1; i <= 30; ++i) {
            const double p = i / 31.0;
            CHECK(recursion_step(p, nu) ==
                  doctest::Approx(binomial_tail_oracle(p, 2 * nu, nu)).epsilon(1e-12));
        }
    }
}

TEST_CASE("recursion_step is monotone in p") {
    for (std::uint32_t nu = 2; nu <= 10; ++nu) {
        double prev = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double p = i / 1000.0;
            const double cur = recursion_step(p, nu);
            CHECK(cur >= prev);
            prev = cur;
        }
    }
}

TEST_CASE("recursion_trace: worked example alpha = 0.05, nu = 2") {
    const RecursionTrace tr = recursion_trace(0.05, 2, 5);
    CHECK(tr.p[0] == 0.05);
    CHECK(tr.p[1] == doctest::Approx(0.01401875).epsilon(1e-9));
    CHECK(tr.first_step_bound == doctest::Approx(0.75 * 0.19 * 0.19).epsilon(1e-12));
    CHECK(tr.first_step_ok);
    // monotone decreasing toward 0
    for (std::size_t t = 1; t < tr.p.size(); ++t) CHECK(tr.p[t] <= tr.p[t - 1]);
    CHECK(tr.p[5] < 1e-10);
    for (std::size_t t = 1; t < tr.p.size(); ++t) CHECK(tr.dominated[t]);
}

TEST_CASE("recursion_trace: condition violated is reported, not an error") {
    const RecursionTrace tr = recursion_trace(0.25, 2, 5);
    CHECK(tr.lhs > 1.0);
    // bound explodes upward, trace still well-defined
    for (double p : tr.p) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("exact p_1 stays below the first-step bound across alpha and nu") {
    for (std::uint32_t nu = 2; nu <= 10; ++nu) {
        for (int i = 1; i <= 1000; ++i) {
            const double alpha = 0.4999 * i / 1000.0;
            if (alpha <= 0.0) continue;
            const double exact = recursion_step(alpha, nu);
            const double bound = 0.5 * (1.0 + 1.0 / std::sqrt(2.0 * nu)) *
                                 std::pow(4.0 * alpha * (1.0 - alpha), static_cast<double>(nu));
            CHECK(exact <= bound * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("dominated for all t <= 20 whenever the condition holds") {
    for (std::uint32_t d : {5u, 7u, 11u}) {
        const std::uint32_t nu = (d - 1) / 2;
        for (int i = 1; i <= 100; ++i) {
            const double alpha = 0.5 * i / 101.0;
            const BiasCondition cond = check_condition(alpha, d, 0.999);
            if (!cond.satisfied) continue;
            const RecursionTrace tr = recursion_trace(alpha, nu, 20);
            for (std::uint32_t t = 1; t <= 20; ++t) CHECK(tr.dominated[t]);
        }
    }
}

TEST_CASE("tree_population") {
    CHECK(tree_population(5, 2) == 26.0); // 1 + 5 + 20
    CHECK(tree_population(3, 1) == 4.0);
    for (std::uint32_t d : {3u, 5u, 9u}) CHECK(tree_population(d, 0) == 1.0);
    CHECK_THROWS_AS(tree_population(2, 3), Error);
}

TEST_CASE("hypergeometric tail: K5 poll example") {
    // blue vertex on K5 with 2 reds: P(>= 2 red among 3 of 4) = 1/2
    CHECK(complete_graph_red_probability(5, 3, 2, false) == doctest::Approx(0.5).epsilon(1e-12));
    // red vertex sees r - 1 reds among the others
    CHECK(complete_graph_red_probability(5, 3, 2, true) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("complete_graph_chain: structure") {
    const CompleteGraphChain chain = complete_graph_chain(11, 3, 0.1);
    SUBCASE("rows are stochastic") {
        for (const auto& row : chain.transition) {
            double sum = 0;
            for (double x : row) sum += x;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("absorbing states") {
        CHECK(chain.transition[0][0] == 1.0);
        CHECK(chain.transition[11][11] == 1.0);
        CHECK(chain.absorb_blue[0] == 1.0);
        CHECK(chain.absorb_blue[11] == 0.0);
        CHECK(chain.expected_time[0] == 0.0);
        CHECK(chain.expected_time[11] == 0.0);
    }
    SUBCASE("one red vertex dies deterministically") {
        CHECK(chain.transition[1][0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(chain.absorb_blue[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("absorption probabilities decrease with the red count") {
        for (std::uint32_t r = 0; r < 11; ++r)
            CHECK(chain.absorb_blue[r] >= chain.absorb_blue[r + 1] - 1e-12);
    }
}

TEST_CASE("complete_graph_chain: state-space guard and preconditions") {
    CHECK_THROWS_AS(complete_graph_chain(26, 3, 0.1), Error);
    CHECK_THROWS_AS(complete_graph_chain(11, 4, 0.1), Error);
    CHECK_THROWS_AS(complete_graph_chain(11, 11, 0.1), Error);
}

TEST_SUITE_END();
