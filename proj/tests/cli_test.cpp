#include "cli_app.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = nthderiv::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

const std::string samples = NTHDERIV_SAMPLES_DIR;

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "nthderiv_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

} // namespace

TEST(CliFormula, Text)
{
    EXPECT_EQ(run({"formula", "implicit", "1"}).out, "- F_x * F_y^-1\n");
    EXPECT_EQ(run({"formula", "parametric", "2"}).out, "g''(t)*[f'(t)]^-2 - g'(t)*f''(t)*[f'(t)]^-3\n");
    EXPECT_EQ(run({"formula", "inverse", "3"}).out, "- f'''(t)*[f'(t)]^-4 + 3*[f''(t)]^2*[f'(t)]^-5\n");
    EXPECT_EQ(run({"formula", "parametric", "4", "-m", "enum"}).out, run({"formula", "parametric", "4"}).out);
}

TEST(CliFormula, JsonIsByteStable)
{
    const auto a = run({"formula", "parametric", "5", "--format", "json"});
    const auto b = run({"formula", "parametric", "5", "--format", "json", "--method", "enum"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(run({"formula", "parametric", "1", "-f", "json"}).out,
              R"({"n":1,"kind":"parametric","layers":[{"k":0,"sign":1,"prefactor_exponent":-1,)"
              R"("monomials":[{"coeff":"1","g_order":1,"f_orders":[]}]}]})"
              "\n");
}

TEST(CliFormula, Latex)
{
    const auto r = run({"formula", "implicit", "1", "-f", "latex"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("F_{x}"), std::string::npos);
}

TEST(CliCoeff, Layers)
{
    EXPECT_EQ(run({"coeff", "parametric", "4", "2"}).out, "15 g''(f'')^2 + 10 g'f''f'''\npartitions: 25\n");
    EXPECT_EQ(run({"coeff", "implicit", "3", "4"}).out, "F_x^3 F_yyy + 9 F_x^2 F_xy F_yy\npartitions: 10\n");
    EXPECT_EQ(run({"coeff", "parametric", "4", "4"}).out, "0\npartitions: 0\n");
    EXPECT_EQ(run({"coeff", "implicit", "3", "4", "-m", "enum"}).out, run({"coeff", "implicit", "3", "4"}).out);
}

TEST(CliEval, Tables)
{
    EXPECT_EQ(run({"eval", "parametric", "2", "--table", samples + "/curve.tbl"}).out, "0.75\n");
    EXPECT_EQ(run({"eval", "parametric", "3", "-t", samples + "/curve.tbl"}).out, "-0.375\n");
    EXPECT_EQ(run({"eval", "implicit", "1", "--table", samples + "/circle.tbl"}).out, "-0.75\n");
    EXPECT_EQ(run({"eval", "implicit", "2", "--table", samples + "/circle.tbl"}).out, "-1.953125\n");
}

TEST(CliEval, InlineValues)
{
    EXPECT_EQ(run({"eval", "parametric", "1", "--t0", "0", "--f", "2", "--g", "10"}).out, "5\n");
    EXPECT_EQ(run({"eval", "implicit", "1", "--x0", "0.6", "--y0", "0.8", "--partial", "1_0=1.2", "--partial",
                   "0_1=1.6"})
                  .out,
              "-0.75\n");
    // inline values override the table file
    EXPECT_EQ(run({"eval", "parametric", "1", "-t", samples + "/curve.tbl", "--g", "4"}).out, "2\n");
}

TEST(CliEval, FormulaFileMatchesDirectEvaluation)
{
    for (const std::string kind : {"parametric", "inverse"}) {
        const auto json = run({"formula", kind, "3", "-f", "json"});
        const auto path = scratch(kind + "3.json");
        write(path, json.out);
        const auto via_file = run({"eval", "--formula", path.string(), "-t", samples + "/curve.tbl"});
        const auto direct = run({"eval", kind, "3", "-t", samples + "/curve.tbl"});
        EXPECT_EQ(via_file.code, 0) << via_file.err;
        EXPECT_EQ(via_file.out, direct.out);
    }
    const auto json = run({"formula", "implicit", "2", "-f", "json"});
    const auto path = scratch("implicit2.json");
    write(path, json.out);
    EXPECT_EQ(run({"eval", "--formula", path.string(), "-t", samples + "/circle.tbl"}).out, "-1.953125\n");
}

TEST(CliErrors, UsageIsTwo)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"formula", "parametric", "0"}).code, 2);
    EXPECT_EQ(run({"formula", "elliptic", "2"}).code, 2);
    EXPECT_EQ(run({"formula", "parametric", "x"}).code, 2);
    EXPECT_EQ(run({"formula", "parametric", "2", "-f", "pdf"}).code, 2);
    EXPECT_EQ(run({"coeff", "inverse", "2", "1"}).code, 2);
    EXPECT_EQ(run({"eval", "parametric", "2"}).code, 2);
    EXPECT_EQ(run({"eval", "parametric", "5", "-t", samples + "/curve.tbl"}).code, 2);
    EXPECT_EQ(run({"eval", "implicit", "2", "-t", samples + "/curve.tbl"}).code, 2);
    EXPECT_EQ(run({"eval", "parametric", "2", "-t", scratch("missing.tbl").string()}).code, 2);
    const auto bad = scratch("bad.tbl");
    write(bad, "t0=1\nf=1,oops\ng=1,1\n");
    EXPECT_EQ(run({"eval", "parametric", "2", "-t", bad.string()}).code, 2);
    const auto bad_json = scratch("bad.json");
    write(bad_json, R"({"n":1,"kind":"parametric","layers":[]})");
    EXPECT_EQ(run({"eval", "--formula", bad_json.string(), "-t", samples + "/curve.tbl"}).code, 2);
    EXPECT_FALSE(run({"formula", "parametric", "0"}).err.empty());
}

TEST(CliErrors, NumericIsThree)
{
    EXPECT_EQ(run({"eval", "parametric", "2", "--t0", "0", "--f", "0,1", "--g", "1,1"}).code, 3);
    EXPECT_EQ(run({"eval", "implicit", "1", "--x0", "0", "--y0", "0", "--partial", "1_0=1", "--partial", "0_1=0"}).code,
              3);
    EXPECT_EQ(run({"eval", "implicit", "1", "--x0", "0", "--y0", "0", "--partial", "0_0=0.5", "--partial", "1_0=1",
                   "--partial", "0_1=1"})
                  .code,
              3);
}

TEST(CliCaps, Defaults)
{
    EXPECT_EQ(run({"formula", "parametric", "13", "-m", "enum"}).code, 2);
    EXPECT_EQ(run({"formula", "parametric", "31"}).code, 2);
    EXPECT_EQ(run({"formula", "parametric", "30"}).code, 0);
    EXPECT_EQ(run({"formula", "parametric", "13", "-m", "enum", "--max-n", "3"}).code, 2);
    EXPECT_EQ(run({"formula", "parametric", "31", "--max-n", "31"}).code, 0);
}

TEST(CliCaps, EnvironmentOverride)
{
    ::setenv("NTHDERIV_RECUR_CAP", "3", 1);
    const int capped = run({"formula", "parametric", "4"}).code;
    const int flag = run({"formula", "parametric", "4", "--max-n", "4"}).code;
    ::unsetenv("NTHDERIV_RECUR_CAP");
    EXPECT_EQ(capped, 2);
    EXPECT_EQ(flag, 0);
    EXPECT_EQ(run({"formula", "parametric", "4"}).code, 0);
}

TEST(CliVerify, Defaults)
{
    const auto r = run({"verify"});
    EXPECT_EQ(r.code, 0) << r.out;
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) {
        EXPECT_EQ(line.rfind("PASS ", 0), 0u) << line;
        ++count;
    }
    EXPECT_EQ(count, 7);
}

TEST(CliVerify, Options)
{
    EXPECT_EQ(run({"verify", "--max-n-parametric", "1", "--max-n-implicit", "1", "--tables", "3"}).code, 0);
    EXPECT_EQ(run({"verify", "--seed", "5", "--tables", "10"}).code, 0);
    EXPECT_EQ(run({"verify", "--max-n-parametric", "0"}).code, 2);
    EXPECT_EQ(run({"verify", "--max-n-implicit", "8"}).code, 2);
}

TEST(CliHelp, IsZero)
{
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("formula"), std::string::npos);
}
