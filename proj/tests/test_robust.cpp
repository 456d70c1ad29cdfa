#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stqp/cce.hpp"
#include "stqp/robust.hpp"
#include "stqp/sampling.hpp"
#include "test_util.hpp"

using namespace stqp;

namespace {

double norm2_sq(const SimplexPoint& x) {
    double s = 0.0;
    for (int i = 0; i < x.dim(); ++i) s += x[i] * x[i];
    return s;
}

// Symmetric matrix scaled to a prescribed Frobenius norm.
SymMatrix random_on_frobenius_sphere(int n, double radius, SeededRng& rng) {
    SymMatrix u = test_util::random_symmetric(n, rng);
    return u.scaled(radius / frobenius_norm(u));
}

}  // namespace

TEST_CASE("frobenius counterpart") {
    SeededRng rng(70, 0);
    const SymMatrix q_nom = test_util::random_symmetric(5, rng);

    SUBCASE("zero radius is the identity map") {
        const SymMatrix same = frobenius_counterpart(q_nom, 0.0);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) CHECK(same(i, j) == q_nom(i, j));
    }
    CHECK_THROWS_AS(frobenius_counterpart(q_nom, -0.1), std::invalid_argument);

    SUBCASE("matches the GOE deterministic equivalent entrywise") {
        for (int rep = 0; rep < 20; ++rep) {
            const SymMatrix nom = test_util::random_symmetric(6, rng);
            const double beta = 0.5 + 3.0 * rng.next_uniform();
            const double alpha = 0.55 + 0.44 * rng.next_uniform();
            const double rho = std::sqrt(2.0) * beta * std_normal_quantile(alpha);
            const SymMatrix lhs = frobenius_counterpart(nom, rho);
            const SymMatrix rhs = deterministic_equivalent(goe_model({nom, beta}), alpha);
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) CHECK(std::abs(lhs(i, j) - rhs(i, j)) <= 1e-14);
        }
    }
    SUBCASE("inner maximum over the Frobenius ball") {
        const int n = 6;
        const double rho = 1.7;
        const SimplexPoint x = test_util::random_simplex_point(n, rng);
        const double bound = rho * norm2_sq(x);
        for (int rep = 0; rep < 10000; ++rep) {
            const SymMatrix u = random_on_frobenius_sphere(n, rho, rng);
            CHECK(quadratic_form(u, x) <= bound + 1e-12);
        }
        // The maximizer rho * xx' / ||x||^2 attains the bound.
        SymMatrix star(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) star.set(i, j, rho * x[i] * x[j] / norm2_sq(x));
        CHECK(frobenius_norm(star) == doctest::Approx(rho).epsilon(1e-12));
        CHECK(quadratic_form(star, x) == doctest::Approx(bound).epsilon(1e-12));
    }
}

TEST_CASE("box bounds from realizations") {
    SUBCASE("single realization collapses the box") {
        SeededRng rng(71, 0);
        const SymMatrix q = test_util::random_symmetric(4, rng);
        const auto [lower, upper] = box_from_realizations({q});
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                CHECK(lower(i, j) == q(i, j));
                CHECK(upper(i, j) == q(i, j));
            }
        }
    }
    SUBCASE("two-matrix example") {
        SymMatrix a(2), b(2);
        a.set(0, 1, 1.0);
        b.set(0, 0, 2.0);
        b.set(0, 1, -1.0);
        b.set(1, 1, 2.0);
        const auto [lower, upper] = box_from_realizations({a, b});
        CHECK(lower(0, 0) == 0.0);
        CHECK(lower(0, 1) == -1.0);
        CHECK(upper(0, 0) == 2.0);
        CHECK(upper(0, 1) == 1.0);
        CHECK(upper(1, 1) == 2.0);
    }
    SUBCASE("every realization lies inside the box") {
        SeededRng rng(72, 0);
        std::vector<SymMatrix> qs;
        for (int r = 0; r < 20; ++r) qs.push_back(test_util::random_symmetric(5, rng));
        const auto [lower, upper] = box_from_realizations(qs);
        for (const auto& q : qs) {
            for (int i = 0; i < 5; ++i) {
                for (int j = 0; j < 5; ++j) {
                    CHECK(q(i, j) >= lower(i, j));
                    CHECK(q(i, j) <= upper(i, j));
                }
            }
        }
    }
    CHECK_THROWS_AS(box_from_realizations({}), std::invalid_argument);
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(box_from_realizations({SymMatrix(2), SymMatrix(3)}),
                        std::invalid_argument);
    }
}

TEST_CASE("box counterpart") {
    SeededRng rng(73, 0);
    const SymMatrix q_nom = test_util::random_symmetric(5, rng);
    std::vector<SymMatrix> realizations;
    for (int r = 0; r < 30; ++r) {
        realizations.push_back(q_nom + test_util::random_symmetric(5, rng).scaled(0.6));
    }
    auto [lower, upper] = box_from_realizations(realizations);

    SUBCASE("rho = 1 returns the upper corner") {
        const BoxUncertainty box = BoxUncertainty::create(lower, upper, q_nom, 1.0);
        const SymMatrix cp = box_counterpart(box);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) CHECK(cp(i, j) == doctest::Approx(upper(i, j)).epsilon(1e-14));
    }
    SUBCASE("inner maximum over the box sits at the corner") {
        const double rho = 0.8;
        const BoxUncertainty box = BoxUncertainty::create(lower, upper, q_nom, rho);
        const SymMatrix cp = box_counterpart(box);
        const SimplexPoint x = test_util::random_simplex_point(5, rng);
        const double corner_value = quadratic_form(cp, x);
        for (int rep = 0; rep < 1000; ++rep) {
            // Random U in the scaled box, entrywise.
            SymMatrix q(5);
            for (int i = 0; i < 5; ++i) {
                for (int j = i; j < 5; ++j) {
                    const double lo = rho * (lower(i, j) - q_nom(i, j));
                    const double hi = rho * (upper(i, j) - q_nom(i, j));
                    q.set(i, j, q_nom(i, j) + lo + (hi - lo) * rng.next_uniform());
                }
            }
            CHECK(quadratic_form(q, x) <= corner_value + 1e-12);
        }
        // Equality at the corner matrix itself.
        SymMatrix corner(5);
        for (int i = 0; i < 5; ++i)
            for (int j = i; j < 5; ++j)
                corner.set(i, j, q_nom(i, j) + rho * (upper(i, j) - q_nom(i, j)));
        CHECK(quadratic_form(corner, x) == doctest::Approx(corner_value).epsilon(1e-12));
    }
    SUBCASE("invariant violations are rejected") {
        CHECK_THROWS_AS(BoxUncertainty::create(upper, lower, q_nom, 0.8), std::invalid_argument);
        CHECK_THROWS_AS(BoxUncertainty::create(lower, upper, q_nom, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(BoxUncertainty::create(lower, upper, q_nom, 1.5), std::invalid_argument);
        CHECK_THROWS_AS(BoxUncertainty::create(SymMatrix(4), SymMatrix(4), q_nom, 0.8),
                        std::invalid_argument);
    }
}

TEST_CASE("solve_robust") {
    SolverConfig cfg;
    SUBCASE("Theorem-2 linkage: frobenius counterpart solves equal cce solves") {
        SeededRng rng(74, 0);
        const SymMatrix q_nom = test_util::random_symmetric(8, rng);
        const double beta = 3.0;
        const LocationScaleModel model = goe_model({q_nom, beta});
        for (double alpha : {0.55, 0.7, 0.9}) {
            const double rho = std::sqrt(2.0) * beta * std_normal_quantile(alpha);
            SeededRng r1(75, 1), r2(75, 1);
            const StqpSolution rob = solve_robust(frobenius_counterpart(q_nom, rho), cfg, r1);
            const auto [cce_sol, t] = solve_cce(model, alpha, cfg, r2);
            CHECK(rob.value == t);
            for (int i = 0; i < 8; ++i) CHECK(rob.x[i] == cce_sol.x[i]);
        }
    }
    SUBCASE("identical realizations reduce the box to the nominal") {
        SeededRng rng(76, 0);
        const SymMatrix q_nom = test_util::random_symmetric(6, rng);
        const auto [lower, upper] = box_from_realizations({q_nom, q_nom, q_nom});
        const BoxUncertainty box = BoxUncertainty::create(lower, upper, q_nom, 0.8);
        SeededRng r1(77, 0), r2(77, 0);
        const StqpSolution rob = solve_robust(box_counterpart(box), cfg, r1);
        const StqpSolution nom = solve(q_nom, cfg, r2);
        CHECK(rob.value == doctest::Approx(nom.value).epsilon(1e-12));
    }
    SUBCASE("nonnegative inflation cannot help") {
        SeededRng rng(78, 0);
        for (int rep = 0; rep < 10; ++rep) {
            const SymMatrix q_nom = test_util::random_symmetric(7, rng);
            // Counterpart = nominal + entrywise-nonnegative bump.
            SymMatrix bump(7);
            for (int i = 0; i < 7; ++i)
                for (int j = i; j < 7; ++j) bump.set(i, j, rng.next_uniform());
            SeededRng r1(79, rep), r2(79, rep);
            const StqpSolution rob = solve_robust(q_nom + bump, cfg, r1);
            const StqpSolution nom = solve(q_nom, cfg, r2);
            CHECK(rob.value >= nom.value - 1e-10);
        }
    }
}
