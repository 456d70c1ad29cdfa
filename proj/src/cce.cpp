#include "stqp/cce.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "stqp/matrix_io.hpp"

namespace stqp {

double DistF::cdf(double u) const {
    switch (family) {
        case DistFamily::StdNormal: return std_normal_cdf(u);
        case DistFamily::GammaShape: return gamma_cdf(GammaParams(gamma_shape, 1.0), u);
    }
    throw std::logic_error("unreachable");
}

double DistF::quantile(double alpha) const {
    switch (family) {
        case DistFamily::StdNormal: return std_normal_quantile(alpha);
        case DistFamily::GammaShape: return gamma_quantile(GammaParams(gamma_shape, 1.0), alpha);
    }
    throw std::logic_error("unreachable");
}

LocationScaleModel LocationScaleModel::create(SymMatrix location, SymMatrix scale, DistF dist) {
    if (location.dim() != scale.dim()) throw std::invalid_argument("dimension mismatch");
    if (dist.family == DistFamily::GammaShape && !(dist.gamma_shape > 0.0)) {
        throw std::invalid_argument("gamma shape must be positive");
    }
    bool entrywise_positive = true;
    for (double v : scale.data()) {
        if (!(v > 0.0)) {
            entrywise_positive = false;
            break;
        }
    }
    if (!entrywise_positive && !(eig_extremes(scale).lambda_min > 0.0)) {
        throw std::invalid_argument(
            "scale matrix not certified positive on the simplex "
            "(needs positive definiteness or entrywise positivity)");
    }
    return LocationScaleModel(std::move(location), std::move(scale), dist);
}

LocationScaleModel goe_model(const GoeModelParams& params) {
    if (!(params.beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const SymMatrix scale = SymMatrix::identity(params.q_nom.dim()).scaled(std::sqrt(2.0) * params.beta);
    return LocationScaleModel::create(params.q_nom, scale, DistF::std_normal());
}

LocationScaleModel wishart_model(const WishartModelParams& params) {
    if (!(params.eta > 0.0)) throw std::invalid_argument("eta must be positive");
    if (params.p < 1) throw std::invalid_argument("p must be >= 1");
    if (!(eig_extremes(params.sigma).lambda_min > 1e-10)) {
        throw std::invalid_argument("Sigma must be positive definite");
    }
    const int n = params.sigma.dim();
    const SymMatrix location = SymMatrix::identity(n).scaled(-params.eta);
    return LocationScaleModel::create(location, params.sigma.scaled(2.0),
                                      DistF::gamma_with_shape(params.p / 2.0));
}

SymMatrix deterministic_equivalent(const LocationScaleModel& model, double alpha) {
    const double q = model.dist().quantile(alpha);
    return model.location() + model.scale().scaled(q);
}

std::pair<StqpSolution, double> solve_cce(const LocationScaleModel& model, double alpha,
                                          const SolverConfig& cfg, SeededRng& rng) {
    const SymMatrix equivalent = deterministic_equivalent(model, alpha);
    StqpSolution sol = solve(equivalent, cfg, rng);
    const double t = sol.value;
    return {std::move(sol), t};
}

double value_at_risk(const LocationScaleModel& model, const SimplexPoint& x, double alpha) {
    return model.mu(x) + model.dist().quantile(alpha) * model.sigma(x);
}

double convexity_threshold(const SymMatrix& q_nom, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    const EigExtremes e = eig_extremes(q_nom);
    if (e.lambda_min >= 0.0) return 0.5;
    return std_normal_cdf(std::abs(e.lambda_min) / (std::sqrt(2.0) * beta));
}

LocationScaleModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("model file " + path.string() + ": " + e.what());
    }

    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    auto matrix_at = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_string()) {
            throw DataError("model file " + path.string() + ": missing string field '" + key + "'");
        }
        std::filesystem::path mp = j[key].get<std::string>();
        if (mp.is_relative()) mp = base / mp;
        return read_matrix_file(mp);
    };
    auto number_at = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_number()) {
            throw DataError("model file " + path.string() + ": missing numeric field '" + key + "'");
        }
        return j[key].get<double>();
    };

    const std::string type = j.value("type", "");
    try {
        if (type == "goe") {
            return goe_model({matrix_at("q_nom"), number_at("beta")});
        }
        if (type == "wishart") {
            const double p = number_at("p");
            if (p < 1.0 || p != std::floor(p)) {
                throw DataError("model file " + path.string() + ": 'p' must be a positive integer");
            }
            return wishart_model({matrix_at("sigma"), static_cast<int>(p), number_at("eta")});
        }
    } catch (const std::invalid_argument& e) {
        throw DataError("model file " + path.string() + ": " + e.what());
    }
    throw DataError("model file " + path.string() + ": 'type' must be \"goe\" or \"wishart\"");
}

}  // namespace stqp
