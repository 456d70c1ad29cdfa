#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "stqp/linalg.hpp"
#include "stqp/solver.hpp"

namespace stqp {

struct AlphaGrid {
    double lo = 0.55;
    double hi = 0.99;
    double step = 0.01;

    // lo, lo+step, ..., hi (rounded to the 1e-12 grid so file output
    // carries clean decimals).
    std::vector<double> values() const;
    void validate() const;
};

struct ExperimentConfig {
    int n = 30;
    int num_nominal = 10;
    int num_realizations = 100;
    double beta = 3.0;
    AlphaGrid alpha_grid;
    double rho = 0.8;
    std::uint64_t master_seed = 0;
    SolverConfig solver;
    std::filesystem::path output_dir = "out";

    void validate() const;
    static ExperimentConfig from_json_file(const std::filesystem::path& path);
};

struct Suite {
    std::vector<SymMatrix> nominals;                    // [i]
    std::vector<SymMatrix> goes;                        // [j]
    std::vector<std::vector<SymMatrix>> realizations;   // [i][j] = nominal_i + beta * goe_j
};

// One (instance, alpha) cell of the chance-constraint sweep.
struct CceCell {
    int instance = 0;      // 0-based
    int alpha_index = 0;
    double alpha = 0.0;
    std::optional<StqpSolution> solution;
    double t_cce = 0.0;
    double coverage = 0.0;
    double value_nom = 0.0;       // x' Q_nom_i x
    double value_emp_sum = 0.0;   // sum_j x' Q_ij x
    bool failed = false;
};

struct StatusTally {
    std::array<long, 4> counts{};  // indexed by SolveStatus
    void add(SolveStatus s) { ++counts[static_cast<int>(s)]; }
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<double> alphas;

    std::vector<std::optional<StqpSolution>> nominal_solutions;             // [i]
    std::vector<std::vector<std::optional<StqpSolution>>> realization_solutions;  // [i][j]
    double l_nom = 0.0;
    double l_emp = 0.0;

    std::vector<CceCell> cce_cells;  // index i * num_alphas + a
    std::vector<double> l_nom_cce;   // per alpha
    std::vector<double> l_emp_cce;
    std::vector<double> abs_err_nom_cce;
    std::vector<double> abs_err_emp_cce;

    std::vector<std::optional<StqpSolution>> robust_solutions;  // [i]
    double l_nom_rob = 0.0;
    double l_emp_rob = 0.0;
    double abs_err_nom_rob = 0.0;
    double abs_err_emp_rob = 0.0;
    bool has_robust = false;

    // Largest grid alpha whose cce error is below the robust error;
    // unset when the cce curve is never below.
    std::optional<double> crossover_nominal_alpha;
    std::optional<double> crossover_empirical_alpha;

    StatusTally tally_nominal, tally_realization, tally_cce, tally_robust;
    long failed_cells = 0;

    const CceCell& cell(int instance, int alpha_index) const {
        return cce_cells[static_cast<std::size_t>(instance) * alphas.size() + alpha_index];
    }
};

// Draws the nominal suite (uniform-symmetric streams 0..num_nominal-1),
// the GOE perturbations (streams num_nominal..num_nominal+m-1) and
// forms the realizations; writes every matrix under
// output_dir/{nominal,goe,realizations} in the text format.
Suite generate_suite(const ExperimentConfig& cfg);

// Fraction of realizations with x'Qx <= t (non-strict).
double empirical_coverage(const SimplexPoint& x, double t,
                          const std::vector<SymMatrix>& realizations);

// Solves the nominal and realized instances, sweeps the alpha grid of
// chance-constraint equivalents, and fills coverage plus the cce
// aggregates. Cells are independent work items; `threads` only changes
// wall time, never results.
ExperimentReport run_cce_sweep(const ExperimentConfig& cfg, const Suite& suite, int threads = 1);

// Adds the box-uncertainty robust comparison and the crossover summary
// to an existing cce report.
void run_robust_comparison(const ExperimentConfig& cfg, const Suite& suite,
                           ExperimentReport& report, int threads = 1);

// generate_suite + run_cce_sweep + run_robust_comparison + all file
// outputs (CSVs, report.json, optional SVG figures).
ExperimentReport run_experiment(const ExperimentConfig& cfg, int threads = 1,
                                bool figures = false);

void write_cce_sweep_csv(const std::filesystem::path& path, const ExperimentReport& report);
void write_aggregates_csv(const std::filesystem::path& path, const ExperimentReport& report);
void write_report_json(const std::filesystem::path& path, const ExperimentReport& report);
void write_figures(const std::filesystem::path& dir, const ExperimentReport& report);

namespace detail {

// Static index partition; each worker owns a strided slice, so results
// land in per-index slots and any thread count yields identical output.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

// Solver stream ids, disjoint from the generation streams.
inline constexpr std::uint64_t stream_nominal_solve = 1ull << 40;
inline constexpr std::uint64_t stream_realization_solve = 2ull << 40;
inline constexpr std::uint64_t stream_cce_solve = 3ull << 40;
inline constexpr std::uint64_t stream_robust_solve = 4ull << 40;

}  // namespace detail

}  // namespace stqp
