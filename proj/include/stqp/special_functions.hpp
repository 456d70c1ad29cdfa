#pragma once

#include <stdexcept>

namespace stqp {

struct GammaParams {
    double shape;  // k > 0
    double scale;  // theta > 0

    GammaParams(double k, double theta) : shape(k), scale(theta) {
        if (!(k > 0.0) || !(theta > 0.0)) {
            throw std::invalid_argument("gamma parameters must be positive");
        }
    }
};

// Phi(z), absolute accuracy 1e-12, monotone nondecreasing.
double std_normal_cdf(double z);

// Phi^{-1}(alpha) for alpha in (0,1); |Phi(result) - alpha| <= 1e-12.
double std_normal_quantile(double alpha);

// Regularized lower incomplete gamma P(k, x/theta); 0 for x <= 0.
double gamma_cdf(const GammaParams& p, double x);

// Inverse of gamma_cdf; |gamma_cdf(result) - alpha| <= 1e-10.
double gamma_quantile(const GammaParams& p, double alpha);

}  // namespace stqp
