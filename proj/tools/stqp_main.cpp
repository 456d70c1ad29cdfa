// Command-line front-end: StQP solves, chance-constraint equivalents,
// robust counterparts, suite generation, coverage checks and the full
// experiment pipeline.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 solver failure.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stqp/cce.hpp"
#include "stqp/experiment.hpp"
#include "stqp/matrix_io.hpp"
#include "stqp/robust.hpp"
#include "stqp/sampling.hpp"
#include "stqp/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int exit_usage = 1;
constexpr int exit_data = 2;
constexpr int exit_solver = 3;

struct SolverFlags {
    int exact_max_n = 16;
    int starts = 0;  // 0 = auto
    std::uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--exact-max-n", exact_max_n,
                        "largest n solved by exact support enumeration");
        cmd->add_option("--starts", starts, "multistart budget (0 = 3n + 50)");
        cmd->add_option("--seed", seed, "master seed for all randomized paths");
    }

    stqp::SolverConfig config() const {
        stqp::SolverConfig cfg;
        cfg.exact_max_n = exact_max_n;
        cfg.num_starts = starts;
        return cfg;
    }
};

std::vector<stqp::SymMatrix> read_matrix_dir(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw stqp::DataError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    if (files.empty()) throw stqp::DataError("no .txt matrix files in " + dir.string());
    std::sort(files.begin(), files.end());
    std::vector<stqp::SymMatrix> matrices;
    matrices.reserve(files.size());
    for (const auto& f : files) matrices.push_back(stqp::read_matrix_file(f));
    return matrices;
}

ordered_json solution_json(const stqp::StqpSolution& sol) {
    ordered_json j;
    j["value"] = sol.value;
    j["status"] = stqp::to_string(sol.status);
    j["support"] = sol.support;
    j["x"] = sol.x.coords();
    j["iterations"] = sol.iterations;
    j["starts"] = sol.starts;
    return j;
}

void print_solution(const stqp::StqpSolution& sol, bool as_json) {
    if (as_json) {
        std::cout << solution_json(sol).dump(2) << '\n';
        return;
    }
    std::cout << "value " << stqp::format_double(sol.value) << '\n';
    std::cout << "status " << stqp::to_string(sol.status) << '\n';
    std::cout << "support";
    for (int i : sol.support) std::cout << ' ' << i;
    std::cout << '\n';
    std::cout << "x";
    for (double c : sol.x.coords()) std::cout << ' ' << stqp::format_double(c);
    std::cout << '\n';
}

std::string join_coords(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += stqp::format_double(v[i]);
    }
    return s;
}

int default_threads() {
    if (const char* env = std::getenv("STQP_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"standard quadratic optimization over the simplex: solvers, "
                 "chance-constraint equivalents, robust counterparts, experiments"};
    app.require_subcommand(1);

    // ---- solve ----
    auto* solve_cmd = app.add_subcommand("solve", "minimize x'Qx over the simplex");
    std::string solve_matrix;
    bool solve_json = false;
    SolverFlags solve_flags;
    solve_cmd->add_option("--matrix", solve_matrix, "matrix file (text format)")->required();
    solve_cmd->add_flag("--json", solve_json, "machine-readable output");
    solve_flags.attach(solve_cmd);

    // ---- cce ----
    auto* cce_cmd = app.add_subcommand("cce", "solve the chance-constrained epigraphic StQP");
    std::string cce_model;
    std::string cce_grid_spec;
    std::string cce_realizations;
    double cce_alpha = -1.0;
    bool cce_json = false;
    SolverFlags cce_flags;
    cce_cmd->add_option("--model", cce_model, "model JSON file")->required();
    auto* alpha_opt = cce_cmd->add_option("--alpha", cce_alpha, "single confidence level in (0,1)");
    auto* grid_opt =
        cce_cmd->add_option("--alpha-grid", cce_grid_spec, "confidence grid LO:HI:STEP");
    alpha_opt->excludes(grid_opt);
    cce_cmd->add_option("--realizations", cce_realizations,
                        "directory of realization matrices for an empirical coverage column");
    cce_cmd->add_flag("--json", cce_json, "machine-readable output");
    cce_flags.attach(cce_cmd);

    // ---- robust ----
    auto* robust_cmd = app.add_subcommand("robust", "solve a robust counterpart");
    std::string robust_matrix;
    std::string robust_realizations;
    double robust_rho = 0.8;
    double robust_rho_frobenius = -1.0;
    bool robust_json = false;
    SolverFlags robust_flags;
    robust_cmd->add_option("--matrix", robust_matrix, "nominal matrix file")->required();
    auto* box_opt = robust_cmd->add_option(
        "--realizations", robust_realizations,
        "directory of realizations; solves the box counterpart (1-rho) Q_nom + rho Q_upper");
    robust_cmd->add_option("--rho", robust_rho, "box scale in (0,1], default 0.8");
    auto* frob_opt = robust_cmd->add_option("--rho-frobenius", robust_rho_frobenius,
                                            "Frobenius radius; solves Q_nom + rho I");
    frob_opt->excludes(box_opt);
    robust_cmd->add_flag("--json", robust_json, "machine-readable output");
    robust_flags.attach(robust_cmd);

    // ---- generate ----
    auto* gen_cmd = app.add_subcommand("generate", "draw and write a nominal/GOE instance suite");
    std::string gen_config;
    std::string gen_out;
    std::optional<std::uint64_t> gen_seed;
    std::optional<int> gen_n, gen_nominal, gen_realizations;
    std::optional<double> gen_beta;
    gen_cmd->add_option("--config", gen_config, "experiment config JSON (optional)");
    gen_cmd->add_option("--out", gen_out, "output directory (overrides config)");
    gen_cmd->add_option("--seed", gen_seed, "master seed override");
    gen_cmd->add_option("--n", gen_n, "matrix dimension override");
    gen_cmd->add_option("--num-nominal", gen_nominal, "nominal count override");
    gen_cmd->add_option("--num-realizations", gen_realizations, "GOE realization count override");
    gen_cmd->add_option("--beta", gen_beta, "perturbation amplitude override");

    // ---- coverage ----
    auto* cov_cmd = app.add_subcommand("coverage", "empirical coverage of a threshold");
    std::string cov_x;
    std::string cov_realizations;
    double cov_t = 0.0;
    cov_cmd->add_option("--x", cov_x, "simplex point file (whitespace-separated)")->required();
    cov_cmd->add_option("--t", cov_t, "threshold")->required();
    cov_cmd->add_option("--realizations", cov_realizations, "directory of realization matrices")
        ->required();

    // ---- experiment ----
    auto* exp_cmd = app.add_subcommand("experiment", "run the full sweep + robust comparison");
    std::string exp_config;
    std::string exp_out;
    std::optional<std::uint64_t> exp_seed;
    bool exp_figures = false;
    int exp_threads = default_threads();
    exp_cmd->add_option("--config", exp_config, "experiment config JSON (optional)");
    exp_cmd->add_option("--out", exp_out, "output directory (overrides config)");
    exp_cmd->add_option("--seed", exp_seed, "master seed override");
    exp_cmd->add_flag("--figures", exp_figures, "emit SVG error-curve figures");
    exp_cmd->add_option("--threads", exp_threads,
                        "worker threads (default: STQP_THREADS or hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*solve_cmd) {
            const stqp::SymMatrix q = stqp::read_matrix_file(solve_matrix);
            stqp::SeededRng rng(solve_flags.seed, 0);
            print_solution(stqp::solve(q, solve_flags.config(), rng), solve_json);
            return 0;
        }

        if (*cce_cmd) {
            const stqp::LocationScaleModel model = stqp::load_model_file(cce_model);
            std::vector<double> alphas;
            if (grid_opt->count()) {
                stqp::AlphaGrid grid;
                if (std::sscanf(cce_grid_spec.c_str(), "%lf:%lf:%lf", &grid.lo, &grid.hi,
                                &grid.step) != 3) {
                    std::cerr << "error: --alpha-grid expects LO:HI:STEP\n";
                    return exit_usage;
                }
                try {
                    alphas = grid.values();
                } catch (const std::invalid_argument& e) {
                    std::cerr << "error: " << e.what() << '\n';
                    return exit_usage;
                }
            } else if (alpha_opt->count()) {
                if (!(cce_alpha > 0.0) || !(cce_alpha < 1.0)) {
                    std::cerr << "error: --alpha must lie in (0,1)\n";
                    return exit_usage;
                }
                alphas.push_back(cce_alpha);
            } else {
                std::cerr << "error: one of --alpha or --alpha-grid is required\n";
                return exit_usage;
            }

            std::vector<stqp::SymMatrix> realizations;
            if (!cce_realizations.empty()) realizations = read_matrix_dir(cce_realizations);

            ordered_json rows = ordered_json::array();
            if (!cce_json) std::cout << "alpha,t_cce,coverage,solver_status,x\n";
            for (std::size_t a = 0; a < alphas.size(); ++a) {
                stqp::SeededRng rng(cce_flags.seed, a);
                auto [sol, t] = stqp::solve_cce(model, alphas[a], cce_flags.config(), rng);
                std::optional<double> coverage;
                if (!realizations.empty()) {
                    coverage = stqp::empirical_coverage(sol.x, t, realizations);
                }
                if (cce_json) {
                    ordered_json row = solution_json(sol);
                    row["alpha"] = alphas[a];
                    row["t"] = t;
                    row["coverage"] = coverage ? ordered_json(*coverage) : ordered_json(nullptr);
                    rows.push_back(std::move(row));
                } else {
                    std::cout << stqp::format_double(alphas[a]) << ',' << stqp::format_double(t)
                              << ',' << (coverage ? stqp::format_double(*coverage) : "") << ','
                              << stqp::to_string(sol.status) << ',' << join_coords(sol.x.coords())
                              << '\n';
                }
            }
            if (cce_json) std::cout << rows.dump(2) << '\n';
            return 0;
        }

        if (*robust_cmd) {
            const stqp::SymMatrix q_nom = stqp::read_matrix_file(robust_matrix);
            stqp::SeededRng rng(robust_flags.seed, 0);
            std::optional<stqp::SymMatrix> counterpart;
            if (frob_opt->count()) {
                if (robust_rho_frobenius < 0.0) {
                    std::cerr << "error: --rho-frobenius must be nonnegative\n";
                    return exit_usage;
                }
                counterpart = stqp::frobenius_counterpart(q_nom, robust_rho_frobenius);
            } else if (box_opt->count()) {
                auto [lower, upper] =
                    stqp::box_from_realizations(read_matrix_dir(robust_realizations));
                const stqp::BoxUncertainty box = stqp::BoxUncertainty::create(
                    std::move(lower), std::move(upper), q_nom, robust_rho);
                counterpart = stqp::box_counterpart(box);
            } else {
                std::cerr << "error: one of --realizations or --rho-frobenius is required\n";
                return exit_usage;
            }
            print_solution(stqp::solve_robust(*counterpart, robust_flags.config(), rng),
                           robust_json);
            return 0;
        }

        if (*gen_cmd) {
            stqp::ExperimentConfig cfg;
            if (!gen_config.empty()) cfg = stqp::ExperimentConfig::from_json_file(gen_config);
            if (gen_seed) cfg.master_seed = *gen_seed;
            if (gen_n) cfg.n = *gen_n;
            if (gen_nominal) cfg.num_nominal = *gen_nominal;
            if (gen_realizations) cfg.num_realizations = *gen_realizations;
            if (gen_beta) cfg.beta = *gen_beta;
            if (!gen_out.empty()) cfg.output_dir = gen_out;
            cfg.validate();
            stqp::generate_suite(cfg);
            std::cout << "wrote " << cfg.num_nominal << " nominal, " << cfg.num_realizations
                      << " goe, " << cfg.num_nominal * cfg.num_realizations
                      << " realization matrices to " << cfg.output_dir.string() << '\n';
            return 0;
        }

        if (*cov_cmd) {
            std::vector<double> coords = stqp::read_vector_file(cov_x);
            std::optional<stqp::SimplexPoint> x;
            try {
                x.emplace(std::move(coords));
            } catch (const std::invalid_argument& e) {
                throw stqp::DataError(std::string("--x: ") + e.what());
            }
            const auto realizations = read_matrix_dir(cov_realizations);
            std::cout << stqp::format_double(stqp::empirical_coverage(*x, cov_t, realizations))
                      << '\n';
            return 0;
        }

        if (*exp_cmd) {
            stqp::ExperimentConfig cfg;
            if (!exp_config.empty()) cfg = stqp::ExperimentConfig::from_json_file(exp_config);
            if (exp_seed) cfg.master_seed = *exp_seed;
            if (!exp_out.empty()) cfg.output_dir = exp_out;
            cfg.validate();
            if (exp_threads < 1) {
                std::cerr << "error: --threads must be >= 1\n";
                return exit_usage;
            }
            std::cerr << "experiment: n=" << cfg.n << " nominals=" << cfg.num_nominal
                      << " realizations=" << cfg.num_realizations
                      << " alphas=" << cfg.alpha_grid.values().size() << " threads=" << exp_threads
                      << '\n';
            const stqp::ExperimentReport report =
                stqp::run_experiment(cfg, exp_threads, exp_figures);
            std::cout << "l_nom " << stqp::format_double(report.l_nom) << '\n';
            std::cout << "l_emp " << stqp::format_double(report.l_emp) << '\n';
            std::cout << "l_nom_rob " << stqp::format_double(report.l_nom_rob) << '\n';
            std::cout << "l_emp_rob " << stqp::format_double(report.l_emp_rob) << '\n';
            std::cout << "crossover_nominal_alpha "
                      << (report.crossover_nominal_alpha
                              ? stqp::format_double(*report.crossover_nominal_alpha)
                              : "none")
                      << '\n';
            std::cout << "crossover_empirical_alpha "
                      << (report.crossover_empirical_alpha
                              ? stqp::format_double(*report.crossover_empirical_alpha)
                              : "none")
                      << '\n';
            std::cout << "failed_cells " << report.failed_cells << '\n';
            return 0;
        }
    } catch (const stqp::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return exit_data;
    } catch (const stqp::SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return exit_solver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_solver;
    }
    return exit_usage;
}
