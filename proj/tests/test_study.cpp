#include <doctest.h>

#include <sstream>

#include "pdwg/errors.hpp"
#include "pdwg/study.hpp"

using namespace pdwg;

namespace {

StudyConfig small_config()
{
    StudyConfig c;
    c.problem = "ex1";
    c.k = 1;
    c.s_offset = 1;
    c.n0 = 2;
    c.levels = 3;
    c.deterministic = true;
    return c;
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

} // namespace

TEST_CASE("StudyConfig validation")
{
    StudyConfig c = small_config();
    CHECK_NOTHROW(c.validate());
    c.levels = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.problem = "ex3";
    c.n0 = 6;
    CHECK_THROWS_WITH_AS(c.validate(), "ex3 requires n0 divisible by 4", ConfigError);
    c = small_config();
    c.problem = "ex2";
    c.k = 2;
    c.s_offset = 2;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.s_offset = 2;   // k = 1
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.p = 0.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_config();
    c.problem = "nope";
    CHECK_THROWS_AS(run_study(c), ConfigError);
}

TEST_CASE("run_study: table layout and CSV")
{
    std::vector<int> seen;
    const StudyResult r = run_study(small_config(), [&](const LevelInfo& l) { seen.push_back(l.n); });
    CHECK(seen == std::vector<int>{2, 4, 8});
    REQUIRE(r.table.levels() == 3);
    CHECK(r.table.h[0] == doctest::Approx(std::sqrt(2.0) / 2.0));
    for (const char* name : {"err_u_0q", "lam_0p", "lam_1p", "lam_2p", "s_value"})
        CHECK(r.table.column(name).values.size() == 3);
    const auto& err = r.table.column("err_u_0q");
    CHECK(err.values[2] < err.values[1]);
    CHECK(err.rates[2] > 0.8);
    CHECK(r.levels[2].num_u == 2 * 8 * 8);

    const std::string csv = format_csv(r.table);
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "h,err_u_0q,rate,lam_0p,rate,lam_1p,rate,lam_2p,rate,s_value,iterations");
    int rows = 0;
    while (std::getline(ss, line)) {
        const auto cells = split(line, ',');
        CHECK(cells.size() == 11);
        if (rows == 0)
            CHECK(cells[2].empty());
        else
            CHECK(cells[2].find('e') != std::string::npos);
        CHECK(cells[1].size() == std::string("1.234e-05").size());
        ++rows;
    }
    CHECK(rows == 3);

    const std::string md = format_markdown(r.table);
    CHECK(md.find(" err_u_0q |") != std::string::npos);
    CHECK(format_table(r.table, OutputFormat::kCsv) == csv);
}

TEST_CASE("run_study: deterministic runs are byte-identical")
{
    const std::string a = format_csv(run_study(small_config()).table);
    const std::string b = format_csv(run_study(small_config()).table);
    CHECK(a == b);
}
