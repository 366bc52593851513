#include "pdwg/pdwg.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>

#include "pdwg/errors.hpp"
#include "pdwg/parallel.hpp"
#include "pdwg/problems.hpp"
#include "pdwg/study.hpp"

struct pdwg_study {
    pdwg::StudyConfig config;
    std::optional<pdwg::StudyResult> result;
    pdwg_level_callback callback = nullptr;
    void* user = nullptr;
};

namespace {

thread_local std::string last_error;

pdwg_status fail(pdwg_status status, const std::string& message)
{
    last_error = message;
    return status;
}

template <typename Fn>
pdwg_status guarded(Fn&& fn)
{
    try {
        fn();
        last_error.clear();
        return PDWG_OK;
    } catch (const pdwg::ConfigError& e) {
        return fail(PDWG_CONFIG_ERROR, e.what());
    } catch (const pdwg::ConvergenceError& e) {
        return fail(PDWG_SOLVER_ERROR, e.what());
    } catch (const pdwg::SingularMatrixError& e) {
        return fail(PDWG_SOLVER_ERROR, e.what());
    } catch (const std::exception& e) {
        return fail(PDWG_ERROR, e.what());
    } catch (...) {
        return fail(PDWG_ERROR, "unknown error");
    }
}

char* copy_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

pdwg_row make_row(const pdwg::LevelInfo& info)
{
    pdwg_row row{};
    row.n = info.n;
    row.h = info.h;
    row.iterations = info.report.iterations;
    row.num_lambda = info.num_lambda;
    row.num_u = info.num_u;
    row.linear_residual = info.report.linear_residual;
    row.constraint_residual = info.report.constraint_residual;
    row.seconds = info.seconds;
    row.s_value = info.report.stabilizer;
    row.err_u = row.lam_0p = row.lam_1p = row.lam_2p = std::nan("");
    row.err_u_rate = row.lam_0p_rate = row.lam_1p_rate = row.lam_2p_rate = row.s_value_rate =
        std::nan("");
    return row;
}

#define PDWG_REQUIRE(cond, msg)                  \
    do {                                         \
        if (!(cond))                             \
            return fail(PDWG_CONFIG_ERROR, msg); \
    } while (0)

} // namespace

extern "C" {

const char* pdwg_version(void) { return "1.0.0"; }

const char* pdwg_last_error(void) { return last_error.c_str(); }

void pdwg_string_free(char* s) { std::free(s); }

void pdwg_set_num_threads(int n) { pdwg::set_num_threads(n); }

int pdwg_num_threads(void) { return pdwg::num_threads(); }

pdwg_status pdwg_study_create(pdwg_study** out)
{
    PDWG_REQUIRE(out, "pdwg_study_create: null output pointer");
    return guarded([&] { *out = new pdwg_study(); });
}

void pdwg_study_destroy(pdwg_study* study) { delete study; }

pdwg_status pdwg_study_set_problem(pdwg_study* study, const char* id)
{
    PDWG_REQUIRE(study && id, "pdwg_study_set_problem: null argument");
    return guarded([&] {
        pdwg::get_problem(id);
        study->config.problem = id;
    });
}

pdwg_status pdwg_study_set_degree(pdwg_study* study, int k, int s_offset)
{
    PDWG_REQUIRE(study, "pdwg_study_set_degree: null study");
    PDWG_REQUIRE(k >= 1, "k must be >= 1");
    PDWG_REQUIRE(s_offset == 1 || s_offset == 2, "s-offset must be 1 or 2");
    study->config.k = k;
    study->config.s_offset = s_offset;
    return PDWG_OK;
}

pdwg_status pdwg_study_set_p(pdwg_study* study, double p)
{
    PDWG_REQUIRE(study, "pdwg_study_set_p: null study");
    PDWG_REQUIRE(p >= 1.0, "p must be >= 1");
    study->config.p = p;
    return PDWG_OK;
}

pdwg_status pdwg_study_set_levels(pdwg_study* study, int n0, int levels)
{
    PDWG_REQUIRE(study, "pdwg_study_set_levels: null study");
    PDWG_REQUIRE(n0 >= 1, "n0 must be >= 1");
    PDWG_REQUIRE(levels >= 2, "levels must be >= 2 to compute rates");
    study->config.n0 = n0;
    study->config.levels = levels;
    return PDWG_OK;
}

pdwg_status pdwg_study_set_solver(pdwg_study* study, double eps, double tol, int max_iters)
{
    PDWG_REQUIRE(study, "pdwg_study_set_solver: null study");
    PDWG_REQUIRE(eps > 0.0, "eps must be positive");
    PDWG_REQUIRE(tol > 0.0, "tol must be positive");
    PDWG_REQUIRE(max_iters >= 1, "max_iters must be >= 1");
    study->config.eps = eps;
    study->config.tol = tol;
    study->config.max_iters = max_iters;
    return PDWG_OK;
}

pdwg_status pdwg_study_set_quadrature(pdwg_study* study, int triangle_degree, int edge_points)
{
    PDWG_REQUIRE(study, "pdwg_study_set_quadrature: null study");
    study->config.quad.triangle_degree = triangle_degree;
    study->config.quad.edge_points = edge_points;
    return PDWG_OK;
}

pdwg_status pdwg_study_set_lattice_order(pdwg_study* study, int order)
{
    PDWG_REQUIRE(study, "pdwg_study_set_lattice_order: null study");
    study->config.lattice_order = order;
    return PDWG_OK;
}

pdwg_status pdwg_study_set_deterministic(pdwg_study* study, int deterministic)
{
    PDWG_REQUIRE(study, "pdwg_study_set_deterministic: null study");
    study->config.deterministic = deterministic != 0;
    return PDWG_OK;
}

pdwg_status pdwg_study_set_callback(pdwg_study* study, pdwg_level_callback callback, void* user)
{
    PDWG_REQUIRE(study, "pdwg_study_set_callback: null study");
    study->callback = callback;
    study->user = user;
    return PDWG_OK;
}

pdwg_status pdwg_study_run(pdwg_study* study)
{
    PDWG_REQUIRE(study, "pdwg_study_run: null study");
    study->result.reset();
    return guarded([&] {
        pdwg::LevelCallback cb;
        if (study->callback)
            cb = [study](const pdwg::LevelInfo& info) {
                const pdwg_row row = make_row(info);
                study->callback(study->user, &row);
            };
        study->result = pdwg::run_study(study->config, cb);
    });
}

int pdwg_study_num_levels(const pdwg_study* study)
{
    return study && study->result ? static_cast<int>(study->result->levels.size()) : 0;
}

pdwg_status pdwg_study_row(const pdwg_study* study, int level, pdwg_row* out)
{
    PDWG_REQUIRE(study && out, "pdwg_study_row: null argument");
    PDWG_REQUIRE(study->result, "pdwg_study_row: study has not been run");
    PDWG_REQUIRE(level >= 0 && level < pdwg_study_num_levels(study), "pdwg_study_row: level out of range");
    const auto& res = *study->result;
    const auto i = static_cast<std::size_t>(level);
    pdwg_row row = make_row(res.levels[i]);
    auto col = [&](const char* name, double& value, double& rate) {
        const auto& c = res.table.column(name);
        value = c.values[i];
        rate = c.rates[i];
    };
    col("err_u_0q", row.err_u, row.err_u_rate);
    col("lam_0p", row.lam_0p, row.lam_0p_rate);
    col("lam_1p", row.lam_1p, row.lam_1p_rate);
    col("lam_2p", row.lam_2p, row.lam_2p_rate);
    col("s_value", row.s_value, row.s_value_rate);
    *out = row;
    return PDWG_OK;
}

pdwg_status pdwg_study_format(const pdwg_study* study, pdwg_format format, char** out)
{
    PDWG_REQUIRE(study && out, "pdwg_study_format: null argument");
    PDWG_REQUIRE(study->result, "pdwg_study_format: study has not been run");
    PDWG_REQUIRE(format == PDWG_FORMAT_CSV || format == PDWG_FORMAT_MARKDOWN,
                 "pdwg_study_format: unknown format");
    return guarded([&] {
        const auto fmt = format == PDWG_FORMAT_CSV ? pdwg::OutputFormat::kCsv
                                                   : pdwg::OutputFormat::kMarkdown;
        *out = copy_string(pdwg::format_table(study->result->table, fmt));
        if (!*out)
            throw std::bad_alloc();
    });
}

pdwg_status pdwg_mesh_dump(const char* problem, int n, char** out)
{
    PDWG_REQUIRE(problem && out, "pdwg_mesh_dump: null argument");
    return guarded([&] {
        const pdwg::Mesh mesh = pdwg::get_problem(problem).build_mesh(n);
        std::ostringstream os;
        mesh.write(os);
        *out = copy_string(os.str());
        if (!*out)
            throw std::bad_alloc();
    });
}

} // extern "C"
