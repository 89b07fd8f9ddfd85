#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "sqjc/errors.hpp"
#include "sqjc/runner.hpp"

namespace {

// CLI11 validator for v in (lo, hi], optionally open at hi as well.
std::function<std::string(const std::string&)> open_range(double lo, double hi, bool open_hi) {
    return [lo, hi, open_hi](const std::string& text) -> std::string {
        char* end = nullptr;
        double v = std::strtod(text.c_str(), &end);
        bool parsed = end != text.c_str() && *end == '\0';
        bool in_range = parsed && v > lo && (open_hi ? v < hi : v <= hi);
        if (!in_range) {
            return "value " + text + " must lie in (" + std::to_string(lo) + ", " +
                   std::to_string(hi) + (open_hi ? ")" : "]");
        }
        return {};
    };
}

unsigned workers_from_env() {
    unsigned fallback = std::max(1u, std::thread::hardware_concurrency());
    const char* raw = std::getenv("SQJC_WORKERS");
    if (!raw || !*raw) return fallback;
    char* end = nullptr;
    long value = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 1 || value > 64) {
        std::fprintf(stderr, "SQJC_WORKERS: expected an integer in [1, 64], got '%s'\n", raw);
        std::exit(2);
    }
    return static_cast<unsigned>(value);
}

void add_output_flags(CLI::App* cmd, sqjc::RunConfig& config, std::string& format) {
    cmd->add_option("--out-dir", config.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "csv+plot-script"}))
        ->capture_default_str();
    cmd->add_option("--tail-tol", config.tail_tol,
                    "Certified bound on the discarded photon-number tail mass")
        ->check(open_range(0.0, 1.0, true))
        ->capture_default_str();
}

void add_state_flags(CLI::App* cmd, sqjc::RunConfig& config) {
    cmd->add_option("--nc", config.n_c, "Mean photon number of the coherent part")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--ns", config.n_s_list,
                    "Mean photon numbers of the squeezed part (comma separated)")
        ->required()
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
}

void add_series_flags(CLI::App* cmd, sqjc::RunConfig& config) {
    cmd->add_option("--tmax", config.t_max, "Series stop, in units of lambda*t")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--step", config.step, "Series sample step, in units of lambda*t")
        ->check(open_range(0.0, 1.0, false))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Photon statistics, collapse/revival dynamics, entanglement entropy, and "
        "optimal-squeezing scans for a two-level atom resonantly coupled to a squeezed "
        "coherent field"};
    app.require_subcommand(1);

    sqjc::RunConfig config;
    config.workers = workers_from_env();
    std::string format = "csv";

    auto* dist = app.add_subcommand("dist", "Photon-number distribution P(n), one CSV per N_S");
    add_state_flags(dist, config);
    add_output_flags(dist, config, format);

    auto* inversion =
        app.add_subcommand("inversion", "Atomic inversion W(lambda*t), one CSV per N_S");
    add_state_flags(inversion, config);
    add_series_flags(inversion, config);
    add_output_flags(inversion, config, format);

    auto* entropy =
        app.add_subcommand("entropy", "Linear entropy L(lambda*t), one CSV per N_S");
    add_state_flags(entropy, config);
    add_series_flags(entropy, config);
    add_output_flags(entropy, config, format);

    auto* mean_entropy = app.add_subcommand(
        "mean-entropy", "Time-averaged linear entropy per N_S, one CSV per N_C");
    add_state_flags(mean_entropy, config);
    mean_entropy->add_option("--lambda-T", config.lambda_T, "Averaging horizon, lambda*t units")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    mean_entropy->add_option("--step", config.avg_step, "Averaging sample step")
        ->check(open_range(0.0, 0.05, false))
        ->capture_default_str();
    add_output_flags(mean_entropy, config, format);

    auto* stats = app.add_subcommand(
        "stats", "Closed-form photon-number variance and Mandel Q per N_S");
    add_state_flags(stats, config);
    add_output_flags(stats, config, format);

    auto* optimal = app.add_subcommand(
        "optimal", "Optimal-squeezing scan: minimum-variance and minimum-Q N_S per N_C");
    optimal->add_option("--nc-min", config.n_c_min, "First N_C of the scan")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    optimal->add_option("--nc-max", config.n_c_max, "Last N_C of the scan")
        ->check(CLI::Range(1, 1000000))
        ->capture_default_str();
    optimal->add_option("--tol", config.tol, "Solver tolerance on N_S")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(optimal, config, format);

    auto* figures = app.add_subcommand(
        "figures", "Every output with the standard parameter sets (N_C 49 and 100)");
    figures->add_flag("--all", "Produce the full set")->required();
    add_series_flags(figures, config);
    figures->add_option("--lambda-T", config.lambda_T, "Averaging horizon, lambda*t units")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(figures, config, format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    config.format = format == "csv+plot-script" ? sqjc::OutputFormat::kCsvPlotScript
                                                : sqjc::OutputFormat::kCsv;
    if (dist->parsed()) config.command = sqjc::Command::kDist;
    if (inversion->parsed()) config.command = sqjc::Command::kInversion;
    if (entropy->parsed()) config.command = sqjc::Command::kEntropy;
    if (mean_entropy->parsed()) config.command = sqjc::Command::kMeanEntropy;
    if (stats->parsed()) config.command = sqjc::Command::kStats;
    if (optimal->parsed()) config.command = sqjc::Command::kOptimal;
    if (figures->parsed()) config.command = sqjc::Command::kFigures;

    try {
        auto written = sqjc::run(config);
        for (const auto& path : written) std::printf("%s\n", path.string().c_str());
        return 0;
    } catch (const sqjc::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const sqjc::SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    } catch (const sqjc::TruncationError& e) {
        std::fprintf(stderr, "truncation error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
