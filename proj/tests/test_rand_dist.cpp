#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stqp/rng.hpp"
#include "stqp/sampling.hpp"
#include "stqp/special_functions.hpp"
#include "test_util.hpp"

using namespace stqp;

TEST_CASE("standard normal cdf") {
    CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double z : {0.3, 1.1, 2.7}) {
        CHECK(std_normal_cdf(z) + std_normal_cdf(-z) == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("agrees with quadrature of the density") {
        for (double z : {0.1, 0.7542, 1.3, 2.0, 3.5}) {
            const double oracle = 0.5 + test_util::integrate(test_util::std_normal_density, 0.0, z);
            CHECK(std::abs(std_normal_cdf(z) - oracle) <= 1e-12);
        }
        CHECK(std_normal_cdf(0.7542) == doctest::Approx(0.7747).epsilon(2e-4));
    }
    SUBCASE("monotone nondecreasing") {
        double prev = 0.0;
        for (double z = -6.0; z <= 6.0; z += 0.01) {
            const double c = std_normal_cdf(z);
            CHECK(c >= prev);
            prev = c;
        }
    }
    CHECK_THROWS_AS(std_normal_cdf(std::nan("")), std::invalid_argument);
}

TEST_CASE("standard normal quantile") {
    CHECK(std::abs(std_normal_quantile(0.5)) <= 1e-12);

    SUBCASE("agrees with bisection on the cdf") {
        const double alpha = 0.77;
        double lo = -10.0, hi = 10.0;
        while (hi - lo > 1e-13) {
            const double mid = 0.5 * (lo + hi);
            (std_normal_cdf(mid) < alpha ? lo : hi) = mid;
        }
        const double oracle = 0.5 * (lo + hi);
        CHECK(std_normal_quantile(alpha) == doctest::Approx(oracle).epsilon(1e-10));
        CHECK(std_normal_quantile(alpha) == doctest::Approx(0.7388).epsilon(2e-4));
    }
    SUBCASE("inverse roundtrip") {
        for (double a : {0.55, 0.70, 0.99}) {
            CHECK(std::abs(std_normal_cdf(std_normal_quantile(a)) - a) <= 1e-11);
        }
        for (double a = 0.01; a < 0.995; a += 0.01) {
            CHECK(std::abs(std_normal_cdf(std_normal_quantile(a)) - a) <= 1e-9);
        }
    }
    SUBCASE("strictly increasing") {
        double prev = std_normal_quantile(0.01);
        for (double a = 0.02; a < 0.995; a += 0.01) {
            const double q = std_normal_quantile(a);
            CHECK(q > prev);
            prev = q;
        }
    }
    CHECK_THROWS_AS(std_normal_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(std_normal_quantile(1.0), std::invalid_argument);
    CHECK_THROWS_AS(std_normal_quantile(-0.2), std::invalid_argument);
}

TEST_CASE("gamma cdf") {
    CHECK(gamma_cdf(GammaParams(1.0, 1.0), std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gamma_cdf(GammaParams(3.0, 2.0), 0.0) == 0.0);
    CHECK(gamma_cdf(GammaParams(3.0, 2.0), -1.0) == 0.0);
    // Integer shape closed form: P(2, x) = 1 - e^{-x}(1 + x).
    CHECK(gamma_cdf(GammaParams(2.0, 1.0), 2.0) ==
          doctest::Approx(1.0 - 3.0 * std::exp(-2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(GammaParams(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GammaParams(1.0, -1.0), std::invalid_argument);

    SUBCASE("agrees with quadrature of the density") {
        const double k = 2.5, theta = 1.5;
        auto density = [&](double t) {
            return std::pow(t, k - 1.0) * std::exp(-t / theta) /
                   (std::tgamma(k) * std::pow(theta, k));
        };
        for (double x : {0.5, 2.0, 5.0, 9.0}) {
            const double oracle = test_util::integrate(density, 0.0, x);
            CHECK(std::abs(gamma_cdf(GammaParams(k, theta), x) - oracle) <= 1e-11);
        }
    }
}

TEST_CASE("gamma quantile") {
    CHECK(gamma_quantile(GammaParams(1.0, 1.0), 0.5) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(gamma_quantile(GammaParams(1.0, 2.0), 0.5) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));

    SUBCASE("scale equivariance") {
        const double k = 3.7, theta = 2.3;
        for (double a = 0.05; a < 1.0; a += 0.05) {
            CHECK(gamma_quantile(GammaParams(k, theta), a) ==
                  doctest::Approx(theta * gamma_quantile(GammaParams(k, 1.0), a)).epsilon(1e-10));
        }
    }
    SUBCASE("inverse roundtrip over the grid") {
        for (double k : {0.5, 1.0, 2.0, 5.0, 17.0}) {
            const GammaParams p(k, 1.0);
            for (double a = 0.01; a < 0.995; a += 0.01) {
                CHECK(std::abs(gamma_cdf(p, gamma_quantile(p, a)) - a) <= 1e-9);
            }
        }
    }
    CHECK_THROWS_AS(gamma_quantile(GammaParams(1.0, 1.0), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gamma_quantile(GammaParams(1.0, 1.0), 1.0), std::invalid_argument);
}

TEST_CASE("seeded rng streams") {
    SeededRng a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    SeededRng c(42, 8);
    SeededRng d(43, 7);
    SeededRng e(42, 7);
    int differs_c = 0, differs_d = 0;
    for (int i = 0; i < 16; ++i) {
        const std::uint64_t v = e.next_u64();
        if (c.next_u64() != v) ++differs_c;
        if (d.next_u64() != v) ++differs_d;
    }
    CHECK(differs_c == 16);
    CHECK(differs_d == 16);

    SeededRng u(0, 0);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.next_uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        const double w = u.next_uniform_pos();
        CHECK(w > 0.0);
        CHECK(w <= 1.0);
    }
}

TEST_CASE("standard normal sampler") {
    SUBCASE("golden first draw") {
        SeededRng rng(42, 7);
        CHECK(sample_std_normal(rng) == doctest::Approx(-0.26137801099592228).epsilon(1e-15));
    }
    SUBCASE("moments over 1e5 draws") {
        SeededRng rng(11, 0);
        std::vector<double> draws(100000);
        for (double& v : draws) v = sample_std_normal(rng);
        const auto m = test_util::moments(draws);
        CHECK(std::abs(m.mean) < 0.02);
        CHECK(std::abs(m.variance - 1.0) < 0.02);
    }
    SUBCASE("identical streams, identical sequences") {
        SeededRng a(5, 3), b(5, 3);
        for (int i = 0; i < 50; ++i) CHECK(sample_std_normal(a) == sample_std_normal(b));
    }
}

TEST_CASE("GOE sampler") {
    SUBCASE("diagonal variance is 2") {
        SeededRng rng(12, 0);
        std::vector<double> draws(100000);
        for (double& v : draws) v = sample_goe(1, rng)(0, 0);
        CHECK(test_util::moments(draws).variance >= 1.94);
        CHECK(test_util::moments(draws).variance <= 2.06);
    }
    SUBCASE("off-diagonal variance is 1") {
        SeededRng rng(13, 0);
        std::vector<double> draws(100000);
        for (double& v : draws) v = sample_goe(2, rng)(0, 1);
        CHECK(test_util::moments(draws).variance >= 0.97);
        CHECK(test_util::moments(draws).variance <= 1.03);
    }
    SUBCASE("vertex form has variance 2") {
        SeededRng rng(14, 0);
        const SimplexPoint e1 = SimplexPoint::vertex(3, 0);
        std::vector<double> draws(100000);
        for (double& v : draws) v = quadratic_form(sample_goe(3, rng), e1);
        CHECK(std::abs(test_util::moments(draws).variance - 2.0) < 0.1);
    }
    SUBCASE("quadratic-form law: variance 2 * ||x||_2^4") {
        SeededRng rng(15, 0);
        const SimplexPoint x = test_util::random_simplex_point(5, rng);
        double norm2 = 0.0;
        for (int i = 0; i < 5; ++i) norm2 += x[i] * x[i];
        const double target = 2.0 * norm2 * norm2;
        std::vector<double> draws(100000);
        for (double& v : draws) v = quadratic_form(sample_goe(5, rng), x);
        CHECK(std::abs(test_util::moments(draws).variance - target) < 0.05 * target);
    }
    SUBCASE("symmetric output") {
        SeededRng rng(16, 0);
        const SymMatrix g = sample_goe(6, rng);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) CHECK(g(i, j) == g(j, i));
    }
}

TEST_CASE("Wishart sampler") {
    SUBCASE("scalar case is chi-squared with p degrees of freedom") {
        SeededRng rng(17, 0);
        const SymMatrix sigma = SymMatrix::identity(1);
        std::vector<double> draws(100000);
        for (double& v : draws) v = sample_wishart(sigma, 3, rng)(0, 0);
        const auto m = test_util::moments(draws);
        CHECK(m.mean >= 2.95);
        CHECK(m.mean <= 3.05);
    }
    SUBCASE("always positive semi-definite") {
        SeededRng rng(18, 0);
        SymMatrix sigma = test_util::random_symmetric(4, rng);
        sigma = sigma + sigma;  // widen the entries a bit
        // Make definitely PD: Sigma <- Sigma'Sigma-like via adding a shifted identity.
        const double shift = std::abs(eig_extremes(sigma).lambda_min) + 1.0;
        sigma = sigma.plus_scaled_identity(shift);
        for (int rep = 0; rep < 100; ++rep) {
            const SymMatrix w = sample_wishart(sigma, 6, rng);
            CHECK(eig_extremes(w).lambda_min >= -1e-10 * std::max(1.0, frobenius_norm(w)));
        }
    }
    SUBCASE("vertex form is gamma with shape p/2 and scale 2") {
        SeededRng rng(19, 0);
        const SymMatrix sigma = SymMatrix::identity(3);
        const int p = 4;
        const SimplexPoint e1 = SimplexPoint::vertex(3, 0);
        std::vector<double> draws(10000);
        for (double& v : draws) v = quadratic_form(sample_wishart(sigma, p, rng), e1);
        const GammaParams gp(p / 2.0, 2.0);
        const double ks =
            test_util::ks_statistic(draws, [&](double t) { return gamma_cdf(gp, t); });
        CHECK(ks < 0.02);
    }
    SUBCASE("rejects non-PD covariance") {
        SymMatrix bad(2);
        bad.set(0, 0, 1.0);
        bad.set(1, 1, -1.0);
        SeededRng rng(20, 0);
        CHECK_THROWS_AS(sample_wishart(bad, 3, rng), std::invalid_argument);
        CHECK_THROWS_AS(sample_wishart(SymMatrix::identity(2), 0, rng), std::invalid_argument);
    }
}

TEST_CASE("uniform symmetric sampler") {
    SeededRng rng(21, 0);
    const SymMatrix q = sample_uniform_symmetric(8, rng);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            CHECK(q(i, j) >= 0.0);
            CHECK(q(i, j) <= 1.0);
            CHECK(q(i, j) == q(j, i));
        }
    }
    SUBCASE("n = 30 eigenvalue ranges match the reference statistics") {
        int in_range = 0;
        for (int i = 0; i < 10; ++i) {
            SeededRng r(0, static_cast<std::uint64_t>(i));
            const auto e = eig_extremes(sample_uniform_symmetric(30, r));
            if (e.lambda_min >= -3.6 && e.lambda_min <= -2.4 && e.lambda_max >= 13.8 &&
                e.lambda_max <= 16.4) {
                ++in_range;
            }
        }
        CHECK(in_range >= 9);
    }
}

TEST_CASE("cholesky factorization") {
    SeededRng rng(22, 0);
    SymMatrix sigma = test_util::random_symmetric(5, rng);
    sigma = sigma.plus_scaled_identity(std::abs(eig_extremes(sigma).lambda_min) + 0.5);
    const auto l = cholesky_lower(sigma);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            double s = 0.0;
            for (int k = 0; k < 5; ++k) s += l[i * 5 + k] * l[j * 5 + k];
            CHECK(s == doctest::Approx(sigma(i, j)).epsilon(1e-10));
            if (j > i) CHECK(l[i * 5 + j] == 0.0);
        }
    }
    SymMatrix indef(2);
    indef.set(0, 0, 1.0);
    indef.set(1, 1, -2.0);
    CHECK_THROWS_AS(cholesky_lower(indef), std::invalid_argument);
}

TEST_CASE("dirichlet sampler stays strictly inside the simplex") {
    SeededRng rng(23, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const SimplexPoint x = sample_dirichlet(6, rng);
        double sum = 0.0;
        for (int i = 0; i < 6; ++i) {
            CHECK(x[i] > 0.0);
            sum += x[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}
