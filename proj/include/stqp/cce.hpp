#pragma once

#include <filesystem>
#include <utility>

#include "stqp/linalg.hpp"
#include "stqp/solver.hpp"
#include "stqp/special_functions.hpp"

namespace stqp {

enum class DistFamily { StdNormal, GammaShape };

// Distribution tag F of a location/scale model: standard normal, or
// gamma with the given shape and unit scale (the scale lives in sigma(x)).
struct DistF {
    DistFamily family = DistFamily::StdNormal;
    double gamma_shape = 1.0;

    static DistF std_normal() { return {DistFamily::StdNormal, 1.0}; }
    static DistF gamma_with_shape(double k) { return {DistFamily::GammaShape, k}; }

    double cdf(double u) const;
    double quantile(double alpha) const;
};

// (M, S, F): the distribution of x'Qx is F((t - mu(x)) / sigma(x)) with
// mu(x) = x'Mx and sigma(x) = x'Sx. Construction certifies positivity of
// sigma on the simplex by a sufficient condition: S positive definite or
// S entrywise positive.
class LocationScaleModel {
public:
    static LocationScaleModel create(SymMatrix location, SymMatrix scale, DistF dist);

    const SymMatrix& location() const { return location_; }
    const SymMatrix& scale() const { return scale_; }
    const DistF& dist() const { return dist_; }
    int dim() const { return location_.dim(); }

    double mu(const SimplexPoint& x) const { return quadratic_form(location_, x); }
    double sigma(const SimplexPoint& x) const { return quadratic_form(scale_, x); }

    // P[x'Qx <= t]
    double cdf_at(const SimplexPoint& x, double t) const {
        return dist_.cdf((t - mu(x)) / sigma(x));
    }

private:
    LocationScaleModel(SymMatrix m, SymMatrix s, DistF f)
        : location_(std::move(m)), scale_(std::move(s)), dist_(f) {}

    SymMatrix location_;
    SymMatrix scale_;
    DistF dist_;
};

struct GoeModelParams {
    SymMatrix q_nom;
    double beta;  // > 0
};

struct WishartModelParams {
    SymMatrix sigma;  // positive definite
    int p;            // >= 1
    double eta;       // > 0
};

// M = Q_nom, S = sqrt(2) beta I, F standard normal.
LocationScaleModel goe_model(const GoeModelParams& params);

// M = -eta I, S = 2 Sigma, F gamma with shape p/2 and unit scale.
LocationScaleModel wishart_model(const WishartModelParams& params);

// The matrix of the equivalent deterministic StQP: M + F^{-1}(alpha) S.
SymMatrix deterministic_equivalent(const LocationScaleModel& model, double alpha);

// Solves the deterministic equivalent; (x, t = value) is feasible for the
// chance-constrained problem with P[x'Qx <= t] = alpha.
std::pair<StqpSolution, double> solve_cce(const LocationScaleModel& model, double alpha,
                                          const SolverConfig& cfg, SeededRng& rng);

// mu(x) + F^{-1}(alpha) sigma(x): smallest t meeting the chance
// constraint at x.
double value_at_risk(const LocationScaleModel& model, const SimplexPoint& x, double alpha);

// Smallest alpha (> 1/2) at which the GOE equivalent matrix turns PSD:
// Phi(|lambda_min| / (sqrt(2) beta)). Returns 0.5 when Q_nom is already PSD.
double convexity_threshold(const SymMatrix& q_nom, double beta);

// JSON model files: {"type": "goe", "q_nom": <matrix path>, "beta": b}
// or {"type": "wishart", "sigma": <matrix path>, "p": p, "eta": e}.
// Matrix paths are resolved relative to the JSON file's directory.
LocationScaleModel load_model_file(const std::filesystem::path& path);

}  // namespace stqp
