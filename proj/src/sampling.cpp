#include "stqp/sampling.hpp"

#include <cmath>
#include <numbers>

namespace stqp {

double sample_std_normal(SeededRng& rng) {
    const double u1 = rng.next_uniform_pos();
    const double u2 = rng.next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SymMatrix sample_goe(int n, SeededRng& rng) {
    SymMatrix g(n);
    constexpr double sqrt2 = 1.4142135623730951;
    for (int i = 0; i < n; ++i) {
        g.set(i, i, sqrt2 * sample_std_normal(rng));
        for (int j = i + 1; j < n; ++j) g.set(i, j, sample_std_normal(rng));
    }
    return g;
}

std::vector<double> cholesky_lower(const SymMatrix& sigma) {
    const int n = sigma.dim();
    std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
    auto at = [&](int i, int j) -> double& { return l[static_cast<std::size_t>(i) * n + j]; };
    for (int j = 0; j < n; ++j) {
        double diag = sigma(j, j);
        for (int k = 0; k < j; ++k) diag -= at(j, k) * at(j, k);
        if (diag < 1e-12) {
            throw std::invalid_argument("cholesky_lower: pivot below 1e-12, matrix not positive definite");
        }
        at(j, j) = std::sqrt(diag);
        for (int i = j + 1; i < n; ++i) {
            double s = sigma(i, j);
            for (int k = 0; k < j; ++k) s -= at(i, k) * at(j, k);
            at(i, j) = s / at(j, j);
        }
    }
    return l;
}

SymMatrix sample_wishart(const SymMatrix& sigma, int p, SeededRng& rng) {
    if (p < 1) throw std::invalid_argument("sample_wishart: p must be >= 1");
    const int n = sigma.dim();
    const EigExtremes e = eig_extremes(sigma);
    if (!(e.lambda_min > 1e-10)) {
        throw std::invalid_argument("sample_wishart: Sigma must be positive definite");
    }
    const std::vector<double> l = cholesky_lower(sigma);

    // y stored column by column: y[:, j] = L z_j.
    std::vector<double> y(static_cast<std::size_t>(n) * p, 0.0);
    std::vector<double> z(n);
    for (int j = 0; j < p; ++j) {
        for (int i = 0; i < n; ++i) z[i] = sample_std_normal(rng);
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int k = 0; k <= i; ++k) s += l[static_cast<std::size_t>(i) * n + k] * z[k];
            y[static_cast<std::size_t>(i) * p + j] = s;
        }
    }

    SymMatrix w(n);
    for (int k = 0; k < n; ++k) {
        for (int m = k; m < n; ++m) {
            double s = 0.0;
            for (int j = 0; j < p; ++j) {
                s += y[static_cast<std::size_t>(k) * p + j] * y[static_cast<std::size_t>(m) * p + j];
            }
            w.set(k, m, s);
        }
    }
    return w;
}

SymMatrix sample_uniform_symmetric(int n, SeededRng& rng) {
    SymMatrix q(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) q.set(i, j, rng.next_uniform());
    return q;
}

SimplexPoint sample_dirichlet(int n, SeededRng& rng) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = -std::log(rng.next_uniform_pos());
    return SimplexPoint::normalized(std::move(w));
}

}  // namespace stqp
