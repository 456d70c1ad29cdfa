#pragma once

#include <utility>
#include <vector>

#include "stqp/linalg.hpp"
#include "stqp/solver.hpp"

namespace stqp {

// Entrywise box around a nominal matrix, scaled by rho in (0,1].
struct BoxUncertainty {
    SymMatrix q_lower;
    SymMatrix q_upper;
    SymMatrix q_nom;
    double rho;

    static BoxUncertainty create(SymMatrix q_lower, SymMatrix q_upper, SymMatrix q_nom, double rho);
};

// Deterministic counterpart of the Frobenius-ball robust StQP:
// Q_nom + rho I.
SymMatrix frobenius_counterpart(const SymMatrix& q_nom, double rho);

// Entrywise min and max across realizations.
std::pair<SymMatrix, SymMatrix> box_from_realizations(const std::vector<SymMatrix>& realizations);

// (1 - rho) Q_nom + rho Q_upper: for x >= 0 the inner maximum over the
// box sits at the upper corner.
SymMatrix box_counterpart(const BoxUncertainty& box);

// Plain StQP solve on a counterpart matrix.
StqpSolution solve_robust(const SymMatrix& counterpart, const SolverConfig& cfg, SeededRng& rng);

}  // namespace stqp
