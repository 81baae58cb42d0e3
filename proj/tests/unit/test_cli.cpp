#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "smlab/commands.hpp"
#include "smlab/config.hpp"

using namespace smlab::cli;
using nlohmann::json;

namespace {

RunConfig linear_config(double delta, int steps) {
    RunConfig c;
    c.delta = delta;
    c.steps = steps;
    return c;
}

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

template <class F>
Outcome call(F&& f, const RunConfig& c) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = f(c, out, err);
    return {code, out.str(), err.str()};
}

std::string value_of(const std::string& csv, const std::string& key) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + ",", 0) == 0) {
            return line.substr(key.size() + 1);
        }
    }
    return {};
}

}  // namespace

TEST(CmdQuantities, LinearExample) {
    const auto r = call(cmd_quantities, RunConfig{});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(value_of(r.out, "p_ser"), "0.25");
    EXPECT_EQ(value_of(r.out, "delta_bar_ser"), "0.916666666667");
    EXPECT_EQ(value_of(r.out, "weakly_decreasing"), "0");
}

TEST(CmdQuantities, WeakCurveFlagged) {
    RunConfig c;
    c.family = "q_epsilon";
    c.epsilon = 0;
    const auto r = call(cmd_quantities, c);
    EXPECT_EQ(value_of(r.out, "weakly_decreasing"), "1");
    EXPECT_EQ(value_of(r.out, "adjusted_p_bar_ser"), "0.5");
    c.format = Format::Json;
    const auto j = json::parse(call(cmd_quantities, c).out);
    EXPECT_EQ(j.at("adjusted_p_bar_ser").get<double>(), 0.5);
    EXPECT_EQ(j.at("family"), "q_zero");
}

TEST(CmdQuantities, LargeSupply) {
    RunConfig c;
    c.supply = 10;
    EXPECT_EQ(value_of(call(cmd_quantities, c).out, "p_ser"), "0.025");
}

TEST(CmdSimulate, ExampleOnePrices) {
    auto r = call(cmd_simulate, linear_config(0.5, 3));
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("2,0.416666666667,"), std::string::npos);
    EXPECT_NE(r.out.find("3,0.5,0.5,0.25,1,"), std::string::npos);

    auto c = linear_config(0.9, 3);
    c.format = Format::Json;
    const auto j = json::parse(call(cmd_simulate, c).out);
    const auto& traj = j.at("trajectory");
    EXPECT_EQ(traj[1].at("price").get<double>(), 0.381578947368);
    EXPECT_EQ(traj[2].at("price").get<double>(), 0.304889298893);
    EXPECT_FALSE(traj[2].at("jumped").get<bool>());
}

TEST(CmdSimulate, ZeroDeltaConstant) {
    auto c = linear_config(0.0, 5);
    c.format = Format::Json;
    for (const auto& row : json::parse(call(cmd_simulate, c).out).at("trajectory")) {
        EXPECT_EQ(row.at("price").get<double>(), 0.5);
    }
}

TEST(CmdSimulate, NeedsScalarDelta) {
    RunConfig c;
    c.grid = DeltaGrid{0, 1, 3};
    EXPECT_THROW(call(cmd_simulate, c), ConfigError);
}

TEST(CmdSimulate, Deterministic) {
    const auto a = call(cmd_simulate, linear_config(0.77, 300));
    const auto b = call(cmd_simulate, linear_config(0.77, 300));
    EXPECT_EQ(a.out, b.out);
}

TEST(CmdSimulate, WritesPlot) {
    auto c = linear_config(0.5, 20);
    const auto path = std::filesystem::temp_directory_path() / "smlab_cli_test_plot.svg";
    c.plot = path;
    EXPECT_EQ(call(cmd_simulate, c).code, kExitOk);
    std::ifstream in(path);
    std::stringstream svg;
    svg << in.rdbuf();
    EXPECT_NE(svg.str().find("<polyline"), std::string::npos);
    EXPECT_NE(svg.str().find("</svg>"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(CmdSweep, SinglePointAndUnitDelta) {
    auto c = linear_config(0.5, 100);
    const auto r = call(cmd_sweep, c);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out.rfind("delta,p_map_hat,recurrence_gap,collapsed,monopolist_visits\n0.5,0.36", 0), 0u);

    c.delta.reset();
    c.grid = DeltaGrid{1, 1, 1};
    c.format = Format::Json;
    const auto j = json::parse(call(cmd_sweep, c).out);
    EXPECT_GE(j[0].at("p_map_hat").get<double>(), 0.25);
}

TEST(CmdSweep, FigureRecipeShape) {
    RunConfig c;
    c.grid = DeltaGrid{0, 1, 101};
    c.steps = 100;
    c.format = Format::Json;
    const auto rows = json::parse(call(cmd_sweep, c).out);
    ASSERT_EQ(rows.size(), 101u);
    EXPECT_EQ(rows[0].at("p_map_hat").get<double>(), 0.5);
    EXPECT_NEAR(rows[100].at("p_map_hat").get<double>(), 0.25, 0.01);
    EXPECT_LT(rows[90].at("p_map_hat").get<double>(), rows[10].at("p_map_hat").get<double>());
}

TEST(CmdBounds, Examples) {
    RunConfig c;
    c.family = "q_epsilon";
    c.epsilon = 0.1;
    c.delta = 0.5;
    auto j = json::parse(call(cmd_bounds, c).out);
    EXPECT_TRUE(j.at("collapse_predicted").get<bool>());
    EXPECT_EQ(j.at("tightness_lower").get<double>(), 0.8);
    EXPECT_NEAR(j.at("tightness_upper").get<double>(), 0.9591, 1e-4);

    j = json::parse(call(cmd_bounds, linear_config(0.95, 1)).out);
    EXPECT_NEAR(j.at("upper_bound").get<double>(), 0.30, 1e-12);

    j = json::parse(call(cmd_bounds, linear_config(0.5, 1)).out);
    EXPECT_TRUE(j.at("upper_bound").is_null());
    EXPECT_EQ(j.at("reasons").at("upper_bound"), "delta <= delta_bar_ser");
}

TEST(CmdVerify, Examples) {
    auto r = call(cmd_verify, linear_config(0.5, 100));
    EXPECT_EQ(r.code, kExitOk) << r.err;
    auto j = json::parse(r.out);
    EXPECT_TRUE(j.at("passed").get<bool>());
    for (const auto& check : j.at("checks")) {
        EXPECT_TRUE(check.at("passed").get<bool>()) << check.at("name");
        EXPECT_TRUE(check.contains("max_residual"));
    }

    RunConfig q;
    q.family = "q_epsilon";
    q.epsilon = 0.2;
    q.delta = 0.5;
    q.steps = 200;
    r = call(cmd_verify, q);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(json::parse(r.out).at("collapsed").get<bool>());

    r = call(cmd_verify, linear_config(1.0, 200));
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(json::parse(r.out).at("bounds").at("p_ser").get<double>(), 0.25);
}

TEST(Config, ParsesDocument) {
    const auto c = parse_config(json::parse(R"({
        "demand": {"family": "q_epsilon", "epsilon": 0.2},
        "s": 2, "delta": {"start": 0, "stop": 1, "count": 11},
        "steps": 50, "seed": 9, "burn_in_fraction": 0.25,
        "output": {"path": "out.csv", "format": "json"}
    })"));
    EXPECT_EQ(c.family, "q_epsilon");
    EXPECT_EQ(c.epsilon, 0.2);
    EXPECT_EQ(c.supply, 2);
    ASSERT_TRUE(c.grid.has_value());
    EXPECT_EQ(c.grid->count, 11);
    EXPECT_FALSE(c.delta.has_value());
    EXPECT_EQ(c.steps, 50);
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(c.format, Format::Json);
    EXPECT_EQ(c.out, "out.csv");
    c.validate();
}

TEST(Config, RejectsBadDocuments) {
    EXPECT_THROW(parse_config(json::parse(R"({"delta": "x"})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"stepz": 3})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"steps": 2.5})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"demand": {"family": "linear", "k": 1}})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse("[1]")), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);

    RunConfig c;
    c.delta = 1.5;
    EXPECT_THROW(c.validate(), ConfigError);
    c.delta = 0.5;
    c.grid = DeltaGrid{};
    EXPECT_THROW(c.validate(), ConfigError);
    RunConfig d;
    d.family = "cubic";
    EXPECT_THROW(d.validate(), ConfigError);
}

TEST(Config, CustomCurveRelativeToConfig) {
    const auto dir = std::filesystem::temp_directory_path() / "smlab_cli_cfg";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "curve.csv") << "price,quantity\n0,1\n1,0\n";
    std::ofstream(dir / "run.json") << R"({"demand": {"family": "custom", "file": "curve.csv"}, "delta": 0.5})";
    const auto c = load_config(dir / "run.json");
    EXPECT_EQ(c.curve()(0.25), 0.75);
    std::ofstream(dir / "bad.csv") << "0,1\n0.5,x\n";
    RunConfig bad;
    bad.family = "custom";
    bad.curve_file = dir / "bad.csv";
    try {
        bad.curve();
        FAIL() << "expected a parse failure";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST(Config, DeltaGridFlag) {
    const auto g = parse_delta_grid("0:1:101");
    EXPECT_EQ(g.start, 0);
    EXPECT_EQ(g.stop, 1);
    EXPECT_EQ(g.count, 101);
    EXPECT_THROW(parse_delta_grid("0:1"), ConfigError);
    EXPECT_THROW(parse_delta_grid("0;1;3"), ConfigError);
    EXPECT_THROW(parse_delta_grid("0:1:3x"), ConfigError);
    EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Config, TieToleranceFromEnvironment) {
    RunConfig c;
    ::setenv("SMLAB_TIE_TOL", "1e-9", 1);
    apply_environment(c);
    EXPECT_EQ(c.tie_tol, 1e-9);
    ::setenv("SMLAB_TIE_TOL", "abc", 1);
    EXPECT_THROW(apply_environment(c), ConfigError);
    ::unsetenv("SMLAB_TIE_TOL");
}
