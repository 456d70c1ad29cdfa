#include "stqp/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "stqp/matrix_io.hpp"
#include "stqp/rng.hpp"
#include "stqp/robust.hpp"
#include "stqp/sampling.hpp"
#include "stqp/special_functions.hpp"

namespace stqp {

namespace {

std::string zero_padded(int value, int width) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%0*d", width, value);
    return buf;
}

double mean_or_zero(double sum, long count) { return count > 0 ? sum / count : 0.0; }

void warn_failed_cell(const std::string& what, const std::exception& e) {
    std::cerr << "warning: " << what << " failed and is excluded from aggregates: " << e.what()
              << "\n";
}

nlohmann::ordered_json tally_json(const StatusTally& t) {
    nlohmann::ordered_json j;
    j["global_exact"] = t.counts[static_cast<int>(SolveStatus::GlobalExact)];
    j["heuristic_best"] = t.counts[static_cast<int>(SolveStatus::HeuristicBest)];
    j["closed_form_concave"] = t.counts[static_cast<int>(SolveStatus::ClosedFormConcave)];
    j["closed_form_convex_stationary"] =
        t.counts[static_cast<int>(SolveStatus::ClosedFormConvexStationary)];
    return j;
}

nlohmann::ordered_json config_json(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["n"] = cfg.n;
    j["num_nominal"] = cfg.num_nominal;
    j["num_realizations"] = cfg.num_realizations;
    j["beta"] = cfg.beta;
    j["alpha_grid"] = {{"lo", cfg.alpha_grid.lo}, {"hi", cfg.alpha_grid.hi}, {"step", cfg.alpha_grid.step}};
    j["rho"] = cfg.rho;
    j["master_seed"] = cfg.master_seed;
    j["solver"] = {{"support_tol", cfg.solver.support_tol},
                   {"rd_tol", cfg.solver.rd_tol},
                   {"rd_max_iter", cfg.solver.rd_max_iter},
                   {"num_starts", cfg.solver.num_starts},
                   {"exact_max_n", cfg.solver.exact_max_n},
                   {"time_limit", cfg.solver.time_limit}};
    // output_dir is deliberately not echoed: the report must be
    // byte-identical wherever the run lands.
    return j;
}

}  // namespace

std::vector<double> AlphaGrid::values() const {
    validate();
    const int count = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
    std::vector<double> v;
    v.reserve(count);
    for (int k = 0; k < count; ++k) {
        const double raw = lo + k * step;
        v.push_back(std::round(raw * 1e12) / 1e12);
    }
    return v;
}

void AlphaGrid::validate() const {
    if (!(lo > 0.0) || !(hi < 1.0) || !(lo <= hi) || !(step > 0.0)) {
        throw std::invalid_argument("alpha grid must satisfy 0 < lo <= hi < 1 with step > 0");
    }
}

void ExperimentConfig::validate() const {
    if (n < 1 || n > SymMatrix::max_dim) throw std::invalid_argument("n out of range");
    if (num_nominal < 1 || num_realizations < 1) throw std::invalid_argument("counts must be >= 1");
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
    if (!(rho > 0.0) || rho > 1.0) throw std::invalid_argument("rho must lie in (0, 1]");
    alpha_grid.validate();
    solver.validate();
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("config file " + path.string() + ": " + e.what());
    }
    if (!j.is_object()) throw DataError("config file " + path.string() + ": expected an object");

    ExperimentConfig cfg;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "n") cfg.n = value.get<int>();
            else if (key == "num_nominal") cfg.num_nominal = value.get<int>();
            else if (key == "num_realizations") cfg.num_realizations = value.get<int>();
            else if (key == "beta") cfg.beta = value.get<double>();
            else if (key == "rho") cfg.rho = value.get<double>();
            else if (key == "master_seed") cfg.master_seed = value.get<std::uint64_t>();
            else if (key == "output_dir") cfg.output_dir = value.get<std::string>();
            else if (key == "alpha_grid") {
                for (const auto& [gk, gv] : value.items()) {
                    if (gk == "lo") cfg.alpha_grid.lo = gv.get<double>();
                    else if (gk == "hi") cfg.alpha_grid.hi = gv.get<double>();
                    else if (gk == "step") cfg.alpha_grid.step = gv.get<double>();
                    else throw DataError("config file " + path.string() + ": unknown alpha_grid key '" + gk + "'");
                }
            } else if (key == "solver") {
                for (const auto& [sk, sv] : value.items()) {
                    if (sk == "support_tol") cfg.solver.support_tol = sv.get<double>();
                    else if (sk == "rd_tol") cfg.solver.rd_tol = sv.get<double>();
                    else if (sk == "rd_max_iter") cfg.solver.rd_max_iter = sv.get<int>();
                    else if (sk == "num_starts") cfg.solver.num_starts = sv.get<int>();
                    else if (sk == "exact_max_n") cfg.solver.exact_max_n = sv.get<int>();
                    else if (sk == "time_limit") cfg.solver.time_limit = sv.get<double>();
                    else throw DataError("config file " + path.string() + ": unknown solver key '" + sk + "'");
                }
            } else {
                throw DataError("config file " + path.string() + ": unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("config file " + path.string() + ": " + e.what());
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw DataError("config file " + path.string() + ": " + e.what());
    }
    return cfg;
}

namespace detail {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = static_cast<std::size_t>(t); i < count; i += workers) body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail

Suite generate_suite(const ExperimentConfig& cfg) {
    cfg.validate();
    Suite suite;
    suite.nominals.reserve(cfg.num_nominal);
    suite.goes.reserve(cfg.num_realizations);

    for (int i = 0; i < cfg.num_nominal; ++i) {
        SeededRng rng(cfg.master_seed, static_cast<std::uint64_t>(i));
        suite.nominals.push_back(sample_uniform_symmetric(cfg.n, rng));
    }
    for (int j = 0; j < cfg.num_realizations; ++j) {
        SeededRng rng(cfg.master_seed, static_cast<std::uint64_t>(cfg.num_nominal + j));
        suite.goes.push_back(sample_goe(cfg.n, rng));
    }
    suite.realizations.reserve(cfg.num_nominal);
    for (int i = 0; i < cfg.num_nominal; ++i) {
        std::vector<SymMatrix> row;
        row.reserve(cfg.num_realizations);
        for (int j = 0; j < cfg.num_realizations; ++j) {
            row.push_back(suite.nominals[i] + suite.goes[j].scaled(cfg.beta));
        }
        suite.realizations.push_back(std::move(row));
    }

    namespace fs = std::filesystem;
    const fs::path root = cfg.output_dir;
    fs::create_directories(root / "nominal");
    fs::create_directories(root / "goe");
    for (int i = 0; i < cfg.num_nominal; ++i) {
        write_matrix_file(root / "nominal" / ("nominal_" + zero_padded(i + 1, 3) + ".txt"),
                          suite.nominals[i]);
    }
    for (int j = 0; j < cfg.num_realizations; ++j) {
        write_matrix_file(root / "goe" / ("goe_" + zero_padded(j + 1, 3) + ".txt"), suite.goes[j]);
    }
    for (int i = 0; i < cfg.num_nominal; ++i) {
        const fs::path dir = root / "realizations" / ("inst_" + zero_padded(i + 1, 3));
        fs::create_directories(dir);
        for (int j = 0; j < cfg.num_realizations; ++j) {
            write_matrix_file(dir / ("real_" + zero_padded(j + 1, 3) + ".txt"),
                              suite.realizations[i][j]);
        }
    }
    return suite;
}

double empirical_coverage(const SimplexPoint& x, double t,
                          const std::vector<SymMatrix>& realizations) {
    if (realizations.empty()) throw std::invalid_argument("need at least one realization");
    long hits = 0;
    for (const SymMatrix& q : realizations) {
        if (quadratic_form(q, x) <= t) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(realizations.size());
}

ExperimentReport run_cce_sweep(const ExperimentConfig& cfg, const Suite& suite, int threads) {
    cfg.validate();
    const int ni = cfg.num_nominal;
    const int nj = cfg.num_realizations;

    ExperimentReport report;
    report.config = cfg;
    report.alphas = cfg.alpha_grid.values();
    const int na = static_cast<int>(report.alphas.size());

    // Instance optima l(Q_i^nom).
    report.nominal_solutions.resize(ni);
    detail::parallel_for(ni, threads, [&](std::size_t i) {
        SeededRng rng(cfg.master_seed, detail::stream_nominal_solve + i);
        try {
            report.nominal_solutions[i] = solve(suite.nominals[i], cfg.solver, rng);
        } catch (const std::exception& e) {
            warn_failed_cell("nominal solve " + std::to_string(i + 1), e);
        }
    });

    // Realized optima l(Q_ij).
    report.realization_solutions.assign(ni, std::vector<std::optional<StqpSolution>>(nj));
    detail::parallel_for(static_cast<std::size_t>(ni) * nj, threads, [&](std::size_t cell) {
        const std::size_t i = cell / nj;
        const std::size_t j = cell % nj;
        SeededRng rng(cfg.master_seed,
                      detail::stream_realization_solve + (i << 32) + j);
        try {
            report.realization_solutions[i][j] = solve(suite.realizations[i][j], cfg.solver, rng);
        } catch (const std::exception& e) {
            warn_failed_cell("realization solve (" + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1) + ")",
                             e);
        }
    });

    // Chance-constraint equivalents across the alpha grid.
    report.cce_cells.assign(static_cast<std::size_t>(ni) * na, CceCell{});
    detail::parallel_for(report.cce_cells.size(), threads, [&](std::size_t cell) {
        const int i = static_cast<int>(cell / na);
        const int a = static_cast<int>(cell % na);
        CceCell& out = report.cce_cells[cell];
        out.instance = i;
        out.alpha_index = a;
        out.alpha = report.alphas[a];
        SeededRng rng(cfg.master_seed,
                      detail::stream_cce_solve + (static_cast<std::uint64_t>(i) << 32) + a);
        try {
            const double shift = std::sqrt(2.0) * cfg.beta * std_normal_quantile(out.alpha);
            const SymMatrix q_cce = suite.nominals[i].plus_scaled_identity(shift);
            StqpSolution sol = solve(q_cce, cfg.solver, rng);
            out.t_cce = sol.value;
            out.coverage = empirical_coverage(sol.x, sol.value, suite.realizations[i]);
            out.value_nom = quadratic_form(suite.nominals[i], sol.x);
            double emp_sum = 0.0;
            for (int j = 0; j < nj; ++j) {
                emp_sum += quadratic_form(suite.realizations[i][j], sol.x);
            }
            out.value_emp_sum = emp_sum;
            out.solution = std::move(sol);
        } catch (const std::exception& e) {
            out.failed = true;
            warn_failed_cell("cce solve (" + std::to_string(i + 1) + ", alpha=" +
                                 std::to_string(out.alpha) + ")",
                             e);
        }
    });

    // Serial reduction in index order; identical for any thread count.
    double nom_sum = 0.0;
    long nom_count = 0;
    for (int i = 0; i < ni; ++i) {
        if (report.nominal_solutions[i]) {
            nom_sum += report.nominal_solutions[i]->value;
            ++nom_count;
            report.tally_nominal.add(report.nominal_solutions[i]->status);
        } else {
            ++report.failed_cells;
        }
    }
    report.l_nom = mean_or_zero(nom_sum, nom_count);

    double emp_sum = 0.0;
    long emp_count = 0;
    for (int i = 0; i < ni; ++i) {
        for (int j = 0; j < nj; ++j) {
            if (report.realization_solutions[i][j]) {
                emp_sum += report.realization_solutions[i][j]->value;
                ++emp_count;
                report.tally_realization.add(report.realization_solutions[i][j]->status);
            } else {
                ++report.failed_cells;
            }
        }
    }
    report.l_emp = mean_or_zero(emp_sum, emp_count);

    report.l_nom_cce.assign(na, 0.0);
    report.l_emp_cce.assign(na, 0.0);
    report.abs_err_nom_cce.assign(na, 0.0);
    report.abs_err_emp_cce.assign(na, 0.0);
    for (int a = 0; a < na; ++a) {
        double nom_cce_sum = 0.0;
        double emp_cce_sum = 0.0;
        long ok = 0;
        for (int i = 0; i < ni; ++i) {
            const CceCell& c = report.cell(i, a);
            if (c.failed) {
                ++report.failed_cells;
                continue;
            }
            report.tally_cce.add(c.solution->status);
            nom_cce_sum += c.value_nom;
            emp_cce_sum += c.value_emp_sum;
            ++ok;
        }
        report.l_nom_cce[a] = mean_or_zero(nom_cce_sum, ok);
        report.l_emp_cce[a] = mean_or_zero(emp_cce_sum, ok * nj);
        report.abs_err_nom_cce[a] = std::abs(report.l_nom_cce[a] - report.l_nom);
        report.abs_err_emp_cce[a] = std::abs(report.l_emp_cce[a] - report.l_emp);
    }
    return report;
}

void run_robust_comparison(const ExperimentConfig& cfg, const Suite& suite,
                           ExperimentReport& report, int threads) {
    const int ni = cfg.num_nominal;
    const int nj = cfg.num_realizations;

    report.robust_solutions.assign(ni, std::nullopt);
    detail::parallel_for(ni, threads, [&](std::size_t i) {
        SeededRng rng(cfg.master_seed, detail::stream_robust_solve + i);
        try {
            auto [lower, upper] = box_from_realizations(suite.realizations[i]);
            const BoxUncertainty box = BoxUncertainty::create(
                std::move(lower), std::move(upper), suite.nominals[i], cfg.rho);
            report.robust_solutions[i] = solve_robust(box_counterpart(box), cfg.solver, rng);
        } catch (const std::exception& e) {
            warn_failed_cell("robust solve " + std::to_string(i + 1), e);
        }
    });

    double nom_sum = 0.0;
    double emp_sum = 0.0;
    long ok = 0;
    for (int i = 0; i < ni; ++i) {
        if (!report.robust_solutions[i]) {
            ++report.failed_cells;
            continue;
        }
        const StqpSolution& sol = *report.robust_solutions[i];
        report.tally_robust.add(sol.status);
        nom_sum += quadratic_form(suite.nominals[i], sol.x);
        double inst_emp = 0.0;
        for (int j = 0; j < nj; ++j) inst_emp += quadratic_form(suite.realizations[i][j], sol.x);
        emp_sum += inst_emp;
        ++ok;
    }
    report.l_nom_rob = mean_or_zero(nom_sum, ok);
    report.l_emp_rob = mean_or_zero(emp_sum, ok * nj);
    report.abs_err_nom_rob = std::abs(report.l_nom_rob - report.l_nom);
    report.abs_err_emp_rob = std::abs(report.l_emp_rob - report.l_emp);
    report.has_robust = true;

    report.crossover_nominal_alpha.reset();
    report.crossover_empirical_alpha.reset();
    for (std::size_t a = 0; a < report.alphas.size(); ++a) {
        if (report.abs_err_nom_cce[a] < report.abs_err_nom_rob) {
            report.crossover_nominal_alpha = report.alphas[a];
        }
        if (report.abs_err_emp_cce[a] < report.abs_err_emp_rob) {
            report.crossover_empirical_alpha = report.alphas[a];
        }
    }
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, int threads, bool figures) {
    const Suite suite = generate_suite(cfg);
    ExperimentReport report = run_cce_sweep(cfg, suite, threads);
    run_robust_comparison(cfg, suite, report, threads);

    write_cce_sweep_csv(cfg.output_dir / "cce_sweep.csv", report);
    write_aggregates_csv(cfg.output_dir / "aggregates.csv", report);
    write_report_json(cfg.output_dir / "report.json", report);
    if (figures) write_figures(cfg.output_dir, report);
    return report;
}

void write_cce_sweep_csv(const std::filesystem::path& path, const ExperimentReport& report) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out << "i,alpha,t_cce,coverage,solver_status,starts,value_nom_at_xcce\n";
    for (const CceCell& c : report.cce_cells) {
        out << (c.instance + 1) << ',' << format_double(c.alpha) << ',';
        if (c.failed) {
            out << ",,failed,,\n";
            continue;
        }
        out << format_double(c.t_cce) << ',' << format_double(c.coverage) << ','
            << to_string(c.solution->status) << ',' << c.solution->starts << ','
            << format_double(c.value_nom) << '\n';
    }
    if (!out) throw DataError("write failed for " + path.string());
}

void write_aggregates_csv(const std::filesystem::path& path, const ExperimentReport& report) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out << "alpha,l_nom,l_emp,l_nom_cce,l_emp_cce,l_nom_rob,l_emp_rob,"
           "abs_err_nom_cce,abs_err_emp_cce,abs_err_nom_rob,abs_err_emp_rob\n";
    for (std::size_t a = 0; a < report.alphas.size(); ++a) {
        out << format_double(report.alphas[a]) << ',' << format_double(report.l_nom) << ','
            << format_double(report.l_emp) << ',' << format_double(report.l_nom_cce[a]) << ','
            << format_double(report.l_emp_cce[a]) << ',';
        if (report.has_robust) {
            out << format_double(report.l_nom_rob) << ',' << format_double(report.l_emp_rob) << ',';
        } else {
            out << ",,";
        }
        out << format_double(report.abs_err_nom_cce[a]) << ','
            << format_double(report.abs_err_emp_cce[a]) << ',';
        if (report.has_robust) {
            out << format_double(report.abs_err_nom_rob) << ','
                << format_double(report.abs_err_emp_rob) << '\n';
        } else {
            out << ",\n";
        }
    }
    if (!out) throw DataError("write failed for " + path.string());
}

void write_report_json(const std::filesystem::path& path, const ExperimentReport& report) {
    nlohmann::ordered_json j;
    j["config"] = config_json(report.config);

    nlohmann::ordered_json crossover;
    crossover["nominal_alpha"] =
        report.crossover_nominal_alpha ? nlohmann::ordered_json(*report.crossover_nominal_alpha)
                                       : nlohmann::ordered_json(nullptr);
    crossover["empirical_alpha"] =
        report.crossover_empirical_alpha
            ? nlohmann::ordered_json(*report.crossover_empirical_alpha)
            : nlohmann::ordered_json(nullptr);
    j["crossover"] = crossover;

    double cov_dev_sum = 0.0;
    long cov_count = 0;
    for (const CceCell& c : report.cce_cells) {
        if (c.failed) continue;
        cov_dev_sum += std::abs(c.coverage - c.alpha);
        ++cov_count;
    }
    nlohmann::ordered_json coverage;
    coverage["mean_abs_deviation_from_alpha"] = mean_or_zero(cov_dev_sum, cov_count);
    for (std::size_t a = 0; a < report.alphas.size(); ++a) {
        if (std::abs(report.alphas[a] - 0.70) < 1e-9) {
            nlohmann::ordered_json per_instance = nlohmann::ordered_json::array();
            for (int i = 0; i < report.config.num_nominal; ++i) {
                const CceCell& c = report.cell(i, static_cast<int>(a));
                per_instance.push_back(c.failed ? nlohmann::ordered_json(nullptr)
                                                : nlohmann::ordered_json(c.coverage));
            }
            coverage["per_instance_at_alpha_0.70"] = per_instance;
        }
    }
    j["coverage"] = coverage;

    j["aggregates"] = {{"l_nom", report.l_nom},
                       {"l_emp", report.l_emp},
                       {"l_nom_rob", report.has_robust ? nlohmann::ordered_json(report.l_nom_rob)
                                                       : nlohmann::ordered_json(nullptr)},
                       {"l_emp_rob", report.has_robust ? nlohmann::ordered_json(report.l_emp_rob)
                                                       : nlohmann::ordered_json(nullptr)}};

    nlohmann::ordered_json tallies;
    tallies["nominal"] = tally_json(report.tally_nominal);
    tallies["realization"] = tally_json(report.tally_realization);
    tallies["cce"] = tally_json(report.tally_cce);
    tallies["robust"] = tally_json(report.tally_robust);
    j["solver_status"] = tallies;
    j["failed_cells"] = report.failed_cells;

    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw DataError("write failed for " + path.string());
}

namespace {

// Minimal SVG line chart: one or two series over the alpha grid.
void write_svg_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<double>& alphas, const std::vector<double>& curve,
                     const std::optional<double>& reference_line) {
    constexpr double width = 640, height = 480;
    constexpr double ml = 70, mr = 20, mt = 40, mb = 50;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    double ymax = reference_line.value_or(0.0);
    for (double v : curve) ymax = std::max(ymax, v);
    if (ymax <= 0.0) ymax = 1.0;
    ymax *= 1.05;
    const double xmin = alphas.front(), xmax = alphas.back();
    const double xspan = std::max(xmax - xmin, 1e-12);

    auto px = [&](double a) { return ml + (a - xmin) / xspan * plot_w; };
    auto py = [&](double v) { return mt + (1.0 - v / ymax) * plot_h; };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };

    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\"" << ml + plot_w
        << "\" y2=\"" << mt + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + plot_h
        << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double a = xmin + xspan * k / 4.0;
        const double v = ymax * k / 4.0;
        out << "<text x=\"" << px(a) << "\" y=\"" << mt + plot_h + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << num(a) << "</text>\n";
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(v) + 4
            << "\" text-anchor=\"end\" font-size=\"11\">" << num(v) << "</text>\n";
        out << "<line x1=\"" << px(a) << "\" y1=\"" << mt + plot_h << "\" x2=\"" << px(a)
            << "\" y2=\"" << mt + plot_h + 4 << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << ml - 4 << "\" y1=\"" << py(v) << "\" x2=\"" << ml << "\" y2=\""
            << py(v) << "\" stroke=\"black\"/>\n";
    }
    out << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-size=\"13\">alpha</text>\n";
    out << "<text x=\"18\" y=\"" << mt + plot_h / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
        << mt + plot_h / 2 << ")\">absolute error</text>\n";

    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        if (k) out << ' ';
        out << num(px(alphas[k])) << ',' << num(py(curve[k]));
    }
    out << "\"/>\n";
    if (reference_line) {
        out << "<line x1=\"" << ml << "\" y1=\"" << py(*reference_line) << "\" x2=\"" << ml + plot_w
            << "\" y2=\"" << py(*reference_line)
            << "\" stroke=\"#b03030\" stroke-width=\"1.5\" stroke-dasharray=\"8 4\"/>\n";
        out << "<text x=\"" << ml + 8 << "\" y=\"" << py(*reference_line) - 6
            << "\" font-size=\"11\" fill=\"#b03030\">robust</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace

void write_figures(const std::filesystem::path& dir, const ExperimentReport& report) {
    write_svg_chart(dir / "fig1_abs_err_nom_cce.svg", "|l_nom_cce(alpha) - l_nom|", report.alphas,
                    report.abs_err_nom_cce, std::nullopt);
    write_svg_chart(dir / "fig2_abs_err_emp_cce.svg", "|l_emp_cce(alpha) - l_emp|", report.alphas,
                    report.abs_err_emp_cce, std::nullopt);
    if (report.has_robust) {
        write_svg_chart(dir / "fig3_abs_err_nom_cce_vs_rob.svg",
                        "|l_nom_cce(alpha) - l_nom| vs robust", report.alphas,
                        report.abs_err_nom_cce, report.abs_err_nom_rob);
        write_svg_chart(dir / "fig4_abs_err_emp_cce_vs_rob.svg",
                        "|l_emp_cce(alpha) - l_emp| vs robust", report.alphas,
                        report.abs_err_emp_cce, report.abs_err_emp_rob);
    }
}

}  // namespace stqp
