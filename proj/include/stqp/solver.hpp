#pragma once

#include <utility>
#include <vector>

#include "stqp/linalg.hpp"
#include "stqp/rng.hpp"

namespace stqp {

enum class SolveStatus {
    GlobalExact,
    HeuristicBest,
    ClosedFormConcave,
    ClosedFormConvexStationary,
};

const char* to_string(SolveStatus s);

struct StqpSolution {
    explicit StqpSolution(SimplexPoint point) : x(std::move(point)) {}

    SimplexPoint x;
    double value = 0.0;
    SolveStatus status = SolveStatus::HeuristicBest;
    std::vector<int> support;  // coordinates above support_tol
    long iterations = 0;       // replicator iterations or KKT systems examined
    int starts = 0;
    bool hit_iteration_cap = false;
};

struct SolverConfig {
    double support_tol = 1e-8;
    double rd_tol = 1e-12;       // replicator stopping tolerance (sup norm)
    int rd_max_iter = 200000;
    int num_starts = 0;          // 0 = auto: 3n + 50
    int exact_max_n = 16;
    double time_limit = 60.0;    // seconds, checked between starts only

    void validate() const;
};

// Closed form for instances concave on the simplex: the minimum sits at
// the vertex with the smallest diagonal entry (smallest index on ties).
StqpSolution solve_concave(const SymMatrix& q);

// Replicator dynamics on the shifted maximization matrix
// Q' = gamma ee' - Q with gamma = max entry + 1, so Q' is entrywise
// positive and maximizing x'Q'x minimizes x'Qx. The objective along the
// trajectory is nonincreasing; a coordinate that starts at zero stays
// there. Optionally records the objective after every step.
StqpSolution replicator_local(const SymMatrix& q, const SimplexPoint& x0, const SolverConfig& cfg,
                              std::vector<double>* objective_trace = nullptr);

// Replicator from the perturbed barycenter, every vertex mixed toward
// the barycenter, and uniform simplex points up to num_starts; the best
// outcome is also checked against the plain vertex scan min_i Q_ii.
StqpSolution solve_multistart(const SymMatrix& q, const SolverConfig& cfg, SeededRng& rng);

// Exact global solve by KKT support enumeration: for every nonempty
// support the stationarity system [2Q_SS, e; e', 0][x;lambda] = [0;1]
// is solved and feasible candidates are compared. Requires
// n <= exact_max_n.
StqpSolution solve_exact_enumeration(const SymMatrix& q, const SolverConfig& cfg);

// Dispatcher: concave-on-simplex instances take the closed form, small
// instances are enumerated exactly, the rest go to the multistart
// heuristic.
StqpSolution solve(const SymMatrix& q, const SolverConfig& cfg, SeededRng& rng);

namespace detail {

// x'Qx restricted to the affine hull of the simplex is concave iff the
// (n-1)-dimensional reduced form (basis e_i - e_n) is NSD.
bool is_concave_on_simplex(const SymMatrix& q);

}  // namespace detail

}  // namespace stqp
