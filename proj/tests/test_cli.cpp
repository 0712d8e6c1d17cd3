#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "homoglab/divfree.hpp"
#include "homoglab/pgf.hpp"
#include "json.hpp"
#include "support.hpp"

namespace homoglab {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("homoglab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args) const
    {
        args.insert(args.begin(), "homoglab");
        std::vector<const char*> argv;
        for (const auto& a : args)
            argv.push_back(a.c_str());
        return cli::run(static_cast<int>(argv.size()), argv.data());
    }

    json load(const std::string& p) const
    {
        std::ifstream in(p);
        return json::parse(in);
    }

    void write(const std::string& p, const std::string& text) const
    {
        std::ofstream(p) << text;
    }

    fs::path dir_;
};

TEST_F(Cli, UsageErrors)
{
    EXPECT_EQ(run({}), cli::usage_error);
    EXPECT_EQ(run({"no-such-command"}), cli::usage_error);
    EXPECT_EQ(run({"project-divfree", "--in", "x.pgf"}), cli::usage_error);
    EXPECT_EQ(run({"--help"}), cli::ok);
}

TEST_F(Cli, NonlocalityReport)
{
    ASSERT_EQ(run({"nonlocality", "--xi1", "1", "--xi2", "0", "--eps", "0.2", "--delta", "0.01", "--out", path("nl.json")}),
              cli::ok);
    const json r = load(path("nl.json"));
    EXPECT_EQ(r["command"], "nonlocality");
    EXPECT_TRUE(r["violation"].get<bool>());
    EXPECT_GT(r["subadditivity"]["lhs"].get<double>(), r["subadditivity"]["rhs"].get<double>());
    EXPECT_TRUE(r.contains("metadata"));
}

TEST_F(Cli, ProjectDivfreeOfAConstantIsZero)
{
    GridField c(Grid::periodic({8, 8}), 2);
    for (std::size_t i = 0; i < c.nodes(); ++i) {
        c.at(i, 0) = 2.0;
        c.at(i, 1) = -1.0;
    }
    write_field(path("c.pgf"), c);
    ASSERT_EQ(run({"project-divfree", "--in", path("c.pgf"), "--out", path("p.pgf"), "--report", path("r.json")}), cli::ok);
    EXPECT_EQ(test::max_abs(read_field(path("p.pgf")).data), 0.0);
    const json r = load(path("r.json"));
    EXPECT_LT(r["residuals"]["output_divergence"].get<double>(), 1e-12);

    // a pure gradient is removed
    const GridField g = test::sample(Grid::periodic({16, 16}), 2, [](std::span<const double> x, std::span<double> v) {
        v[0] = std::cos(2 * test::pi * x[0]);
        v[1] = 0.0;
    });
    write_field(path("g.pgf"), g);
    ASSERT_EQ(run({"project-divfree", "--in", path("g.pgf"), "--out", path("q.pgf")}), cli::ok);
    EXPECT_LT(test::max_abs(read_field(path("q.pgf")).data), 1e-13);
}

TEST_F(Cli, MissingInputIsAnIoError)
{
    EXPECT_EQ(run({"project-divfree", "--in", path("absent.pgf"), "--out", path("p.pgf")}), cli::io_error);
}

TEST_F(Cli, MalformedConfigNamesTheKey)
{
    write(path("bad.json"), R"({"x_grid": 8, "coefficients": {"grid": 8}, "integrand": {"kind": "quadratic", "alpah": 2}})");
    ASSERT_EQ(run({"relax-energy", "--config", path("bad.json"), "--out", path("r.json")}), cli::usage_error);
    const json r = load(path("r.json"));
    const std::string msg = r["error"]["message"];
    EXPECT_NE(msg.find("/integrand/alpah"), std::string::npos) << msg;
    EXPECT_EQ(r["error"]["kind"], "ConfigError");

    write(path("syntax.json"), "{ not json");
    EXPECT_EQ(run({"relax-energy", "--config", path("syntax.json"), "--out", path("s.json")}), cli::usage_error);

    write(path("type.json"), R"({"coefficients": {"grid": 8}, "relaxation": {"r": "ten"}})");
    EXPECT_EQ(run({"relax-energy", "--config", path("type.json"), "--out", path("t.json")}), cli::usage_error);
    EXPECT_NE(load(path("t.json"))["error"]["message"].get<std::string>().find("/relaxation/r"), std::string::npos);
}

TEST_F(Cli, RelaxEnergyIsDeterministic)
{
    write(path("run.json"), R"({
      "x_grid": 8,
      "u": "builtin:linear",
      "coefficients": {"type": "example51", "grid": 8},
      "integrand": {"kind": "quadratic"},
      "relaxation": {"r": 10, "r_sweep": [1, 10]},
      "seed": 3
    })");
    ASSERT_EQ(run({"relax-energy", "--config", path("run.json"), "--out", path("a.json")}), cli::ok);
    ASSERT_EQ(run({"relax-energy", "--config", path("run.json"), "--out", path("b.json")}), cli::ok);
    json a = load(path("a.json")), b = load(path("b.json"));
    a.erase("metadata");
    b.erase("metadata");
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a["feasible"].get<bool>());
    EXPECT_EQ(a["table"].size(), 2u);
}

TEST_F(Cli, InfeasibleEnergyIsWrittenAsInfinity)
{
    write(path("run.json"), R"({"x_grid": 8, "coefficients": {"type": "example51", "grid": 8}, "relaxation": {"r": 0}})");
    ASSERT_EQ(run({"relax-energy", "--config", path("run.json"), "--out", path("r.json")}), cli::ok);
    const json r = load(path("r.json"));
    EXPECT_EQ(r["value"], "inf");
    EXPECT_FALSE(r["feasible"].get<bool>());
}

TEST_F(Cli, NonconvexIntegrandIsRejected)
{
    write(path("run.json"), R"({"x_grid": 8, "coefficients": {"type": "example51", "grid": 8}, "integrand": {"kind": "double_well"}})");
    EXPECT_EQ(run({"relax-energy", "--config", path("run.json"), "--out", path("r.json")}), cli::usage_error);
}

TEST_F(Cli, UnfoldAndCoupledProjectRoundTrip)
{
    test::Gen gen(5);
    write_field(path("u.pgf"), gen.noise(Grid::unit_box(2, 32), 2));
    ASSERT_EQ(run({"unfold", "--in", path("u.pgf"), "--eps", "0.25", "--out", path("t.pgf"), "--report", path("u.json")}),
              cli::ok);
    EXPECT_LT(load(path("u.json"))["norms"]["isometry_defect"].get<double>(), 1e-12);

    write(path("coeff.json"), R"({"type": "example51", "grid": 8})");
    ASSERT_EQ(run({"coupled-project", "--v", path("t.pgf"), "--coeff", path("coeff.json"), "--out", path("p.pgf"),
                   "--report", path("p.json")}),
              cli::ok);
    const json r = load(path("p.json"));
    EXPECT_LT(r["residuals"]["output"]["y_max"].get<double>(), 1e-8);
    EXPECT_LT(r["residuals"]["output"]["x"].get<double>(), 1e-8);

    EXPECT_EQ(run({"unfold", "--in", path("u.pgf"), "--eps", "0.3", "--out", path("x.pgf")}), cli::usage_error);

    // four samples of the peaked profile normalize to a minimum of -1
    write(path("coarse.json"), R"({"type": "example51", "grid": 4})");
    EXPECT_EQ(run({"coupled-project", "--v", path("t.pgf"), "--coeff", path("coarse.json"), "--out", path("c.pgf")}),
              cli::usage_error);
}

TEST_F(Cli, MollifyDistancesDecrease)
{
    write(path("cb.json"), R"({"type": "checkerboard", "grid": 32, "low": 1, "high": 4})");
    ASSERT_EQ(run({"mollify", "--coeff", path("cb.json"), "--k", "4,8,16", "--out", path("m.json")}), cli::ok);
    const json r = load(path("m.json"));
    EXPECT_TRUE(r["strictly_decreasing"].get<bool>());
    EXPECT_EQ(r["mollified"].size(), 3u);
}

TEST_F(Cli, Example51AgreesWithClosedForm)
{
    ASSERT_EQ(run({"example51", "--grid", "8", "--ygrid", "8", "--out", path("e.json")}), cli::ok);
    EXPECT_LT(load(path("e.json"))["relative_difference"].get<double>(), 1e-3);
}

TEST_F(Cli, AcceptSubsetExitCode)
{
    EXPECT_EQ(run({"accept", "--only", "1,9", "--out", path("a.json")}), cli::ok);
    EXPECT_TRUE(load(path("a.json"))["all_passed"].get<bool>());
}

}  // namespace
}  // namespace homoglab
