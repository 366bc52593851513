#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdwg/norms.hpp"
#include "pdwg/pdwg_solver.hpp"

namespace pdwg {

enum class OutputFormat { kCsv, kMarkdown };

struct StudyConfig {
    std::string problem = "ex1";
    int k = 2;
    int s_offset = 1;       // s = k - s_offset
    double p = 2.0;
    int n0 = 4;
    int levels = 5;
    double eps = 1e-3;
    double tol = 1e-10;
    int max_iters = 100;
    QuadratureOptions quad;
    int lattice_order = 10;
    bool deterministic = false;

    int s() const { return k - s_offset; }
    void validate() const;
};

struct LevelInfo {
    int n = 0;
    double h = 0.0;
    int num_lambda = 0;
    int num_u = 0;
    double seconds = 0.0;
    SolveReport report;
};

struct StudyResult {
    StudyConfig config;
    ConvergenceTable table;   // columns err_u_0q, lam_0p, lam_1p, lam_2p, s_value
    std::vector<LevelInfo> levels;
};

using LevelCallback = std::function<void(const LevelInfo&)>;

/// Solves on n0, 2 n0, ..., 2^(levels-1) n0 and tabulates errors and rates.
StudyResult run_study(const StudyConfig& config, const LevelCallback& on_level = {});

std::string format_csv(const ConvergenceTable& table);
std::string format_markdown(const ConvergenceTable& table);
std::string format_table(const ConvergenceTable& table, OutputFormat format);

} // namespace pdwg
