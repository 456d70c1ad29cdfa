#include "stqp/robust.hpp"

#include <algorithm>

namespace stqp {

BoxUncertainty BoxUncertainty::create(SymMatrix q_lower, SymMatrix q_upper, SymMatrix q_nom,
                                      double rho) {
    const int n = q_nom.dim();
    if (q_lower.dim() != n || q_upper.dim() != n) throw std::invalid_argument("dimension mismatch");
    if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("rho must lie in (0, 1]");
    for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l) {
            if (q_lower(k, l) > q_nom(k, l) + 1e-12 || q_nom(k, l) > q_upper(k, l) + 1e-12) {
                throw std::invalid_argument("box bounds must satisfy lower <= nominal <= upper");
            }
        }
    }
    return {std::move(q_lower), std::move(q_upper), std::move(q_nom), rho};
}

SymMatrix frobenius_counterpart(const SymMatrix& q_nom, double rho) {
    if (rho < 0.0) throw std::invalid_argument("rho must be nonnegative");
    return q_nom.plus_scaled_identity(rho);
}

std::pair<SymMatrix, SymMatrix> box_from_realizations(const std::vector<SymMatrix>& realizations) {
    if (realizations.empty()) throw std::invalid_argument("need at least one realization");
    const int n = realizations.front().dim();
    SymMatrix lower = realizations.front();
    SymMatrix upper = realizations.front();
    for (std::size_t r = 1; r < realizations.size(); ++r) {
        const SymMatrix& q = realizations[r];
        if (q.dim() != n) throw std::invalid_argument("dimension mismatch across realizations");
        for (int k = 0; k < n; ++k) {
            for (int l = k; l < n; ++l) {
                lower.set(k, l, std::min(lower(k, l), q(k, l)));
                upper.set(k, l, std::max(upper(k, l), q(k, l)));
            }
        }
    }
    return {std::move(lower), std::move(upper)};
}

SymMatrix box_counterpart(const BoxUncertainty& box) {
    const int n = box.q_nom.dim();
    SymMatrix out(n);
    for (int k = 0; k < n; ++k) {
        for (int l = k; l < n; ++l) {
            out.set(k, l, (1.0 - box.rho) * box.q_nom(k, l) + box.rho * box.q_upper(k, l));
        }
    }
    return out;
}

StqpSolution solve_robust(const SymMatrix& counterpart, const SolverConfig& cfg, SeededRng& rng) {
    return solve(counterpart, cfg, rng);
}

}  // namespace stqp
