#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sqjc {

enum class Command { kDist, kInversion, kEntropy, kMeanEntropy, kStats, kOptimal, kFigures };

enum class OutputFormat { kCsv, kCsvPlotScript };

// Validated invocation of one subcommand. Flag-level validation lives in the
// CLI layer; run() re-checks the documented ranges so the library surface is
// safe on its own.
struct RunConfig {
    Command command;
    double n_c = 49.0;
    std::vector<double> n_s_list = {0.0};
    double t_max = 120.0;       // series stop, lambda*t units
    double step = 0.02;         // series sample step
    double tail_tol = 1e-12;
    double lambda_T = 1000.0;   // averaging horizon for mean-entropy
    double avg_step = 0.05;     // averaging sample step
    int n_c_min = 1;            // optimal scan range
    int n_c_max = 100;
    double tol = 1e-10;         // solver tolerance
    std::filesystem::path out_dir = "out";
    OutputFormat format = OutputFormat::kCsv;
    unsigned workers = 1;
};

// Executes the subcommand, writing its CSV files (and optional plot scripts)
// under out_dir. Returns the list of files written. On any failure the files
// already written by this invocation are removed before the error propagates.
std::vector<std::filesystem::path> run(const RunConfig& config);

}  // namespace sqjc
