#include "sqjc/runner.hpp"

#include <cmath>
#include <fstream>
#include <string>
#include <system_error>

#include "sqjc/csv.hpp"
#include "sqjc/dynamics.hpp"
#include "sqjc/errors.hpp"
#include "sqjc/field_state.hpp"
#include "sqjc/optimality.hpp"

namespace sqjc {

namespace {

void check_flag(bool ok, const std::string& flag, const std::string& what) {
    if (!ok) throw DomainError(flag + ": " + what);
}

void validate(const RunConfig& c) {
    bool per_field = c.command != Command::kOptimal && c.command != Command::kFigures;
    if (per_field || c.command == Command::kFigures) {
        check_flag(std::isfinite(c.n_c) && c.n_c >= 0.0, "--nc", "must be finite and >= 0");
        check_flag(!c.n_s_list.empty(), "--ns", "needs at least one value");
        for (double ns : c.n_s_list) {
            check_flag(std::isfinite(ns) && ns >= 0.0, "--ns",
                       "values must be finite and >= 0");
        }
    }
    check_flag(c.tail_tol > 0.0 && c.tail_tol < 1.0, "--tail-tol", "must lie in (0, 1)");
    if (c.command == Command::kInversion || c.command == Command::kEntropy ||
        c.command == Command::kFigures) {
        check_flag(std::isfinite(c.t_max) && c.t_max > 0.0, "--tmax", "must be positive");
        check_flag(c.step > 0.0 && c.step <= 1.0, "--step", "must lie in (0, 1]");
    }
    if (c.command == Command::kMeanEntropy || c.command == Command::kFigures) {
        check_flag(std::isfinite(c.lambda_T) && c.lambda_T > 0.0, "--lambda-T",
                   "must be positive");
        check_flag(c.avg_step > 0.0 && c.avg_step <= 0.05, "--step",
                   "must lie in (0, 0.05] to resolve the fastest Rabi oscillation");
    }
    if (c.command == Command::kOptimal || c.command == Command::kFigures) {
        check_flag(c.n_c_min >= 1, "--nc-min", "must be >= 1");
        check_flag(c.n_c_max >= c.n_c_min, "--nc-max", "must be >= --nc-min");
        check_flag(c.tol > 0.0, "--tol", "must be positive");
    }
    check_flag(c.workers >= 1, "SQJC_WORKERS", "must be >= 1");
}

TimeGrid series_grid(const RunConfig& c) {
    auto count = static_cast<std::size_t>(std::llround(c.t_max / c.step)) + 1;
    return {0.0, c.step, count};
}

std::string file_tag(double value) { return format_label(value); }

class Emitter {
public:
    explicit Emitter(const RunConfig& config) : config_(config) {}

    void table(const std::string& name, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
        auto path = config_.out_dir / name;
        emit_csv(path, header, rows);
        written_.push_back(path);
    }

    // gnuplot driver next to the CSVs; display-only, never load-bearing.
    void plot_script(const std::string& name, const std::string& title,
                     const std::vector<std::string>& csv_names, const std::string& using_expr,
                     const std::string& xlabel, const std::string& ylabel) {
        if (config_.format != OutputFormat::kCsvPlotScript) return;
        auto path = config_.out_dir / name;
        std::string body;
        body += "set datafile separator ','\n";
        body += "set key autotitle columnhead\n";
        body += "set title '" + title + "'\n";
        body += "set xlabel '" + xlabel + "'\n";
        body += "set ylabel '" + ylabel + "'\n";
        body += "plot ";
        for (std::size_t i = 0; i < csv_names.size(); ++i) {
            if (i) body += ", ";
            body += "'" + csv_names[i] + "' using " + using_expr + " with lines title '" +
                    csv_names[i] + "'";
        }
        body += "\n";
        std::error_code ec;
        std::filesystem::create_directories(config_.out_dir, ec);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + path.string());
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + path.string());
        written_.push_back(path);
    }

    const std::vector<std::filesystem::path>& written() const { return written_; }

    void discard_all() {
        for (const auto& p : written_) {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
    }

private:
    const RunConfig& config_;
    std::vector<std::filesystem::path> written_;
};

void run_dist(const RunConfig& c, Emitter& em) {
    std::vector<std::string> files;
    for (double ns : c.n_s_list) {
        auto p = photon_distribution(params_from_means(c.n_c, ns), c.tail_tol);
        std::vector<std::vector<std::string>> rows;
        rows.reserve(p.size());
        for (std::size_t n = 0; n < p.size(); ++n) {
            rows.push_back({format_int(static_cast<std::int64_t>(n)), format_double(p[n])});
        }
        std::string name = "dist_nc" + file_tag(c.n_c) + "_ns" + file_tag(ns) + ".csv";
        em.table(name, {"n", "P"}, rows);
        files.push_back(name);
    }
    em.plot_script("plot_dist_nc" + file_tag(c.n_c) + ".gp",
                   "photon-number distribution, N_C=" + file_tag(c.n_c), files, "1:2",
                   "n", "P(n)");
}

void run_series(const RunConfig& c, Emitter& em, bool entropy) {
    TimeGrid grid = series_grid(c);
    const char* stem = entropy ? "entropy" : "inversion";
    std::vector<std::string> files;
    for (double ns : c.n_s_list) {
        auto amps = amplitudes(params_from_means(c.n_c, ns), c.tail_tol);
        TimeSeries series = entropy ? entropy_series(amps, grid, c.workers)
                                    : inversion(photon_distribution(amps), grid, c.workers);
        std::vector<std::vector<std::string>> rows;
        rows.reserve(series.values.size());
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            rows.push_back({format_double(grid.at(i)), format_double(series.values[i])});
        }
        std::string name =
            std::string(stem) + "_nc" + file_tag(c.n_c) + "_ns" + file_tag(ns) + ".csv";
        em.table(name, {"lambda_t", entropy ? "L" : "W"}, rows);
        files.push_back(name);
    }
    em.plot_script("plot_" + std::string(stem) + "_nc" + file_tag(c.n_c) + ".gp",
                   std::string(entropy ? "linear entropy" : "atomic inversion") +
                       ", N_C=" + file_tag(c.n_c),
                   files, "1:2", "lambda t", entropy ? "L" : "W");
}

void run_mean_entropy(const RunConfig& c, Emitter& em) {
    std::vector<std::vector<std::string>> rows;
    for (double ns : c.n_s_list) {
        auto amps = amplitudes(params_from_means(c.n_c, ns), c.tail_tol);
        double lbar = mean_linear_entropy(amps, c.lambda_T, c.avg_step, c.workers);
        rows.push_back({format_double(ns), format_double(lbar)});
    }
    std::string name = "mean_entropy_nc" + file_tag(c.n_c) + ".csv";
    em.table(name, {"N_S", "Lbar"}, rows);
    em.plot_script("plot_mean_entropy_nc" + file_tag(c.n_c) + ".gp",
                   "time-averaged linear entropy, N_C=" + file_tag(c.n_c), {name}, "1:2",
                   "N_S", "Lbar");
}

void run_stats(const RunConfig& c, Emitter& em) {
    std::vector<std::vector<std::string>> rows;
    for (double ns : c.n_s_list) {
        FieldMoments m = moments(params_from_means(c.n_c, ns));
        rows.push_back(
            {format_double(ns), format_double(m.variance), format_double(m.mandel_q)});
    }
    std::string name = "stats_nc" + file_tag(c.n_c) + ".csv";
    em.table(name, {"N_S", "variance", "Q"}, rows);
    em.plot_script("plot_stats_nc" + file_tag(c.n_c) + ".gp",
                   "photon-number variance and Mandel Q, N_C=" + file_tag(c.n_c), {name}, "1:2",
                   "N_S", "variance");
}

void run_optimal(const RunConfig& c, Emitter& em) {
    auto reports = scan_optimal(c.n_c_min, c.n_c_max, c.tol);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(reports.size());
    for (const auto& r : reports) {
        rows.push_back({format_int(static_cast<std::int64_t>(r.n_c)),
                        format_double(r.ns_min_variance), format_double(r.ns_min_q_direct),
                        r.ns_min_q_condition ? format_double(*r.ns_min_q_condition) : "",
                        format_double(r.res_min_variance),
                        r.res_min_q_condition ? format_double(*r.res_min_q_condition) : ""});
    }
    em.table("optimal.csv",
             {"N_C", "NS_minVar", "NS_minQ_direct", "NS_minQ_closedform", "res_minVar",
              "res_minQ_closedform"},
             rows);
    em.plot_script("plot_optimal.gp", "optimal squeezing per N_C", {"optimal.csv"}, "1:2",
                   "N_C", "N_S");
}

void run_figures(const RunConfig& c, Emitter& em) {
    for (double n_c : {49.0, 100.0}) {
        RunConfig sub = c;
        sub.n_c = n_c;
        sub.n_s_list = {0.0, 1.0, 2.0, 5.0, 10.0};
        run_dist(sub, em);
        run_series(sub, em, /*entropy=*/false);
        run_series(sub, em, /*entropy=*/true);
        run_stats(sub, em);
        sub.n_s_list = {0.0, 0.5, 1.0, 1.5, 2.0, 5.0, 10.0};
        run_mean_entropy(sub, em);
    }
    RunConfig sub = c;
    sub.n_c_min = 1;
    sub.n_c_max = 100;
    run_optimal(sub, em);
}

}  // namespace

std::vector<std::filesystem::path> run(const RunConfig& config) {
    validate(config);
    Emitter em(config);
    try {
        switch (config.command) {
            case Command::kDist: run_dist(config, em); break;
            case Command::kInversion: run_series(config, em, false); break;
            case Command::kEntropy: run_series(config, em, true); break;
            case Command::kMeanEntropy: run_mean_entropy(config, em); break;
            case Command::kStats: run_stats(config, em); break;
            case Command::kOptimal: run_optimal(config, em); break;
            case Command::kFigures: run_figures(config, em); break;
        }
    } catch (...) {
        em.discard_all();
        throw;
    }
    return em.written();
}

}  // namespace sqjc
