#include "stqp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

#include "stqp/sampling.hpp"

namespace stqp {

namespace {

std::vector<int> support_of(const SimplexPoint& x, double tol) {
    std::vector<int> s;
    for (int i = 0; i < x.dim(); ++i) {
        if (x[i] > tol) s.push_back(i);
    }
    return s;
}

// Gaussian elimination with partial pivoting; nullopt on (near-)singular.
std::optional<std::vector<double>> solve_dense(std::vector<double> a, std::vector<double> b) {
    const int m = static_cast<int>(b.size());
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    const double singular_tol = 1e-12 * std::max(1.0, scale);

    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
        }
        if (std::abs(a[piv * m + col]) < singular_tol) return std::nullopt;
        if (piv != col) {
            for (int c = col; c < m; ++c) std::swap(a[piv * m + c], a[col * m + c]);
            std::swap(b[piv], b[col]);
        }
        const double inv = 1.0 / a[col * m + col];
        for (int r = col + 1; r < m; ++r) {
            const double f = a[r * m + col] * inv;
            if (f == 0.0) continue;
            for (int c = col; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
            b[r] -= f * b[col];
        }
    }
    for (int r = m - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < m; ++c) s -= a[r * m + c] * b[c];
        b[r] = s / a[r * m + r];
    }
    return b;
}

// Fixed-association dot product with four independent accumulators; the
// split keeps the FP pipeline busy without changing results run to run.
double dot_unrolled(const double* a, const double* b, int n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    int l = 0;
    for (; l + 4 <= n; l += 4) {
        s0 += a[l] * b[l];
        s1 += a[l + 1] * b[l + 1];
        s2 += a[l + 2] * b[l + 2];
        s3 += a[l + 3] * b[l + 3];
    }
    for (; l < n; ++l) s0 += a[l] * b[l];
    return (s0 + s1) + (s2 + s3);
}

// KKT stationarity solution on a support: [2Q_SS, e; e', 0][x;lambda]=[0;1].
// Returns the support-restricted coordinates, or nullopt when singular.
std::optional<std::vector<double>> kkt_on_support(const SymMatrix& q, const std::vector<int>& idx) {
    const int m = static_cast<int>(idx.size());
    std::vector<double> a(static_cast<std::size_t>(m + 1) * (m + 1), 0.0);
    std::vector<double> b(m + 1, 0.0);
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) {
            a[static_cast<std::size_t>(r) * (m + 1) + c] = 2.0 * q(idx[r], idx[c]);
        }
        a[static_cast<std::size_t>(r) * (m + 1) + m] = 1.0;
        a[static_cast<std::size_t>(m) * (m + 1) + r] = 1.0;
    }
    b[m] = 1.0;
    auto sol = solve_dense(std::move(a), std::move(b));
    if (!sol) return std::nullopt;
    sol->resize(m);  // drop the multiplier
    return sol;
}

// The restriction of x'Qx to the relative interior of the face spanned
// by idx has an attracting interior stationary point only if the
// tangent-reduced form is PSD there (the face-restricted problem is
// convex around it).
bool face_reduced_psd(const SymMatrix& q, const std::vector<int>& idx) {
    const int m = static_cast<int>(idx.size());
    if (m <= 1) return true;
    SymMatrix reduced(m - 1);
    const int last = idx[m - 1];
    for (int r = 0; r < m - 1; ++r) {
        for (int c = r; c < m - 1; ++c) {
            reduced.set(r, c, q(idx[r], idx[c]) - q(idx[r], last) - q(idx[c], last) + q(last, last));
        }
    }
    const double tol = 1e-9 * std::max(1.0, frobenius_norm(reduced));
    return eig_extremes(reduced).lambda_min >= -tol;
}

StqpSolution vertex_solution(const SymMatrix& q, int i) {
    StqpSolution sol{SimplexPoint::vertex(q.dim(), i)};
    sol.value = q(i, i);
    sol.support = {i};
    return sol;
}

int argmin_diagonal(const SymMatrix& q) {
    int best = 0;
    for (int i = 1; i < q.dim(); ++i) {
        if (q(i, i) < q(best, best)) best = i;
    }
    return best;
}

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::GlobalExact: return "GlobalExact";
        case SolveStatus::HeuristicBest: return "HeuristicBest";
        case SolveStatus::ClosedFormConcave: return "ClosedFormConcave";
        case SolveStatus::ClosedFormConvexStationary: return "ClosedFormConvexStationary";
    }
    return "?";
}

void SolverConfig::validate() const {
    if (!(support_tol > 0.0) || !(rd_tol > 0.0) || rd_max_iter < 1 || num_starts < 0 ||
        exact_max_n < 1 || !(time_limit > 0.0)) {
        throw std::invalid_argument("solver config fields must be positive");
    }
}

namespace detail {

bool is_concave_on_simplex(const SymMatrix& q) {
    const int n = q.dim();
    if (n == 1) return true;
    SymMatrix reduced(n - 1);
    const int last = n - 1;
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i; j < n - 1; ++j) {
            reduced.set(i, j, q(i, j) - q(i, last) - q(j, last) + q(last, last));
        }
    }
    const double tol = 1e-9 * std::max(1.0, frobenius_norm(reduced));
    return eig_extremes(reduced).lambda_max <= tol;
}

}  // namespace detail

StqpSolution solve_concave(const SymMatrix& q) {
    StqpSolution sol = vertex_solution(q, argmin_diagonal(q));
    sol.status = SolveStatus::ClosedFormConcave;
    return sol;
}

namespace {

// State of one replicator step: payoff vector y = Q'x and the shifted
// objective x'Q'x.
struct StepEval {
    std::vector<double> y;
    double denom = 0.0;
};

void eval_step(const std::vector<double>& qp, const std::vector<double>& x, StepEval& ev) {
    const int n = static_cast<int>(x.size());
    for (int k = 0; k < n; ++k) {
        ev.y[k] = dot_unrolled(qp.data() + static_cast<std::size_t>(k) * n, x.data(), n);
    }
    ev.denom = dot_unrolled(x.data(), ev.y.data(), n);
}

}  // namespace

StqpSolution replicator_local(const SymMatrix& q, const SimplexPoint& x0, const SolverConfig& cfg,
                              std::vector<double>* objective_trace) {
    cfg.validate();
    const int n = q.dim();
    if (x0.dim() != n) throw std::invalid_argument("dimension mismatch");

    const double gamma = q.max_entry() + 1.0;
    // Shifted payoff matrix, flat row-major for the hot loop.
    std::vector<double> qp(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) qp[static_cast<std::size_t>(k) * n + l] = gamma - q(k, l);

    std::vector<double> x = x0.coords();
    StepEval ev;
    ev.y.resize(n);

    if (objective_trace) {
        objective_trace->clear();
        objective_trace->push_back(quadratic_form(q, std::span<const double>(x)));
    }

    // Trying the stationarity system on the currently visible support
    // short-circuits the slow geometric tail of the dynamics. A
    // candidate is accepted only when it (a) is feasible, (b) sits at a
    // face-convex stationary point, (c) admits no ascent of the shifted
    // objective along dropped coordinates, (d) does not increase the
    // objective, and (e) passes the sup-norm fixed-point test; then it
    // is a genuine limit of the dynamics, reached early.
    std::vector<int> snap_support;
    std::vector<double> z(n), zy(n);
    auto try_snap_support = [&](double current_value) -> bool {
        if (snap_support.empty()) return false;
        const auto kkt = kkt_on_support(q, snap_support);
        if (!kkt) return false;
        for (double v : *kkt) {
            if (v < -1e-10) return false;
        }
        if (!face_reduced_psd(q, snap_support)) return false;

        std::fill(z.begin(), z.end(), 0.0);
        double sum = 0.0;
        for (std::size_t r = 0; r < snap_support.size(); ++r) {
            const double v = std::max((*kkt)[r], 0.0);
            z[snap_support[r]] = v;
            sum += v;
        }
        if (!(sum > 0.5)) return false;  // badly conditioned system
        for (double& v : z) v /= sum;

        const double z_value = quadratic_form(q, std::span<const double>(z));
        if (!(z_value <= current_value + 1e-12 * std::max(1.0, std::abs(current_value)))) {
            return false;
        }
        // One verification step: fixed to rd_tol, and no dropped
        // coordinate may grow.
        for (int k = 0; k < n; ++k) {
            zy[k] = dot_unrolled(qp.data() + static_cast<std::size_t>(k) * n, z.data(), n);
        }
        const double zdenom = dot_unrolled(z.data(), zy.data(), n);
        const double ascent_tol = 1e-12 * std::max(1.0, std::abs(zdenom));
        for (int k = 0; k < n; ++k) {
            if (z[k] == 0.0) {
                if (zy[k] > zdenom + ascent_tol) return false;
            } else if (std::abs(z[k] * zy[k] / zdenom - z[k]) >= cfg.rd_tol) {
                return false;
            }
        }
        x = z;
        return true;
    };

    // Candidate supports from coarse to fine: relative cuts separate
    // the surviving coordinates from the slowly dying tail long before
    // the tail crosses the absolute threshold.
    std::vector<int> tried_support;
    auto try_snap = [&](double current_value) -> bool {
        const double xmax = *std::max_element(x.begin(), x.end());
        tried_support.clear();
        for (const double cut : {1e-2 * xmax, 1e-4 * xmax, cfg.support_tol}) {
            snap_support.clear();
            for (int k = 0; k < n; ++k) {
                if (x[k] > cut) snap_support.push_back(k);
            }
            if (snap_support == tried_support) continue;
            tried_support = snap_support;
            if (try_snap_support(current_value)) return true;
        }
        return false;
    };

    long iter = 0;
    bool capped = true;
    for (; iter < cfg.rd_max_iter; ++iter) {
        eval_step(qp, x, ev);

        double max_diff = 0.0;
        double sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const double next = x[k] * ev.y[k] / ev.denom;
            max_diff = std::max(max_diff, std::abs(next - x[k]));
            x[k] = next;
            sum += next;
        }
        if (objective_trace) {
            objective_trace->push_back(quadratic_form(q, std::span<const double>(x)));
        }
        if (max_diff < cfg.rd_tol) {
            ++iter;
            capped = false;
            break;
        }
        if ((iter & 255) == 255) {
            // Rounding drift in the simplex sum stays O(eps); rescale.
            for (double& v : x) v /= sum;
            if (try_snap(quadratic_form(q, std::span<const double>(x)))) {
                ++iter;
                capped = false;
                if (objective_trace) {
                    objective_trace->push_back(quadratic_form(q, std::span<const double>(x)));
                }
                break;
            }
        }
    }

    StqpSolution sol{SimplexPoint::normalized(std::move(x))};
    sol.value = quadratic_form(q, sol.x);
    sol.status = SolveStatus::HeuristicBest;
    sol.support = support_of(sol.x, cfg.support_tol);
    sol.iterations = iter;
    sol.starts = 1;
    sol.hit_iteration_cap = capped;
    return sol;
}

StqpSolution solve_multistart(const SymMatrix& q, const SolverConfig& cfg, SeededRng& rng) {
    cfg.validate();
    const int n = q.dim();
    const int total_starts = cfg.num_starts > 0 ? cfg.num_starts : 3 * n + 50;
    const auto t0 = std::chrono::steady_clock::now();
    auto out_of_time = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >
               cfg.time_limit;
    };

    std::optional<StqpSolution> best;
    long iterations = 0;
    int starts = 0;
    auto consider = [&](StqpSolution cand) {
        iterations += cand.iterations;
        ++starts;
        if (!best || cand.value < best->value) best = std::move(cand);
    };

    // Perturbed barycenter start.
    {
        const SimplexPoint d = sample_dirichlet(n, rng);
        std::vector<double> w(n);
        for (int k = 0; k < n; ++k) w[k] = 0.99 / n + 0.01 * d[k];
        consider(replicator_local(q, SimplexPoint::normalized(std::move(w)), cfg));
    }
    // Vertices mixed toward the barycenter; replicator cannot leave a
    // face once a coordinate is exactly zero, hence the mixing.
    for (int i = 0; i < n && !out_of_time(); ++i) {
        std::vector<double> w(n, 0.05 / n);
        w[i] += 0.95;
        consider(replicator_local(q, SimplexPoint::normalized(std::move(w)), cfg));
    }
    // Uniform random starts fill the remaining budget.
    for (int s = starts; s < total_starts && !out_of_time(); ++s) {
        consider(replicator_local(q, sample_dirichlet(n, rng), cfg));
    }

    StqpSolution sol = std::move(*best);
    const int iv = argmin_diagonal(q);
    if (q(iv, iv) < sol.value) {
        StqpSolution vs = vertex_solution(q, iv);
        vs.status = SolveStatus::HeuristicBest;
        sol = std::move(vs);
    }
    sol.iterations = iterations;
    sol.starts = starts;
    return sol;
}

StqpSolution solve_exact_enumeration(const SymMatrix& q, const SolverConfig& cfg) {
    cfg.validate();
    const int n = q.dim();
    if (n > cfg.exact_max_n) {
        throw SolverError("n = " + std::to_string(n) + " exceeds exact_max_n = " +
                          std::to_string(cfg.exact_max_n));
    }
    if (n > 30) {
        throw SolverError("support enumeration capped at n = 30");
    }

    std::optional<StqpSolution> best;
    long examined = 0;
    std::vector<int> idx;
    idx.reserve(n);

    for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
        ++examined;
        idx.clear();
        for (int i = 0; i < n; ++i) {
            if (mask & (1ull << i)) idx.push_back(i);
        }
        const int m = static_cast<int>(idx.size());

        std::vector<double> x_full(n, 0.0);
        if (m == 1) {
            x_full[idx[0]] = 1.0;
        } else {
            const auto kkt = kkt_on_support(q, idx);
            if (!kkt) continue;  // singular support; its minimizers appear on sub-supports

            bool feasible = true;
            for (int r = 0; r < m; ++r) {
                if ((*kkt)[r] < -1e-10) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) continue;
            for (int r = 0; r < m; ++r) x_full[idx[r]] = std::max((*kkt)[r], 0.0);
        }

        std::optional<SimplexPoint> x;
        try {
            x.emplace(std::move(x_full));
        } catch (const std::invalid_argument&) {
            continue;  // ill-conditioned stationarity solution, handled on sub-supports
        }
        const double value = quadratic_form(q, *x);
        if (!best || value < best->value) {
            StqpSolution cand(std::move(*x));
            cand.value = value;
            cand.status = SolveStatus::GlobalExact;
            cand.support = support_of(cand.x, cfg.support_tol);
            best = std::move(cand);
        }
    }

    best->iterations = examined;
    best->starts = 0;
    return std::move(*best);
}

StqpSolution solve(const SymMatrix& q, const SolverConfig& cfg, SeededRng& rng) {
    cfg.validate();
    if (detail::is_concave_on_simplex(q)) return solve_concave(q);
    if (q.dim() <= cfg.exact_max_n) return solve_exact_enumeration(q, cfg);
    return solve_multistart(q, cfg, rng);
}

}  // namespace stqp
