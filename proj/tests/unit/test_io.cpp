#include <sstream>

#include <gtest/gtest.h>

#include "smlab/io.hpp"

using namespace smlab;

TEST(FormatNumber, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(11.0 / 12), "0.916666666667");
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(0.025), "0.025");
    EXPECT_DOUBLE_EQ(round_significant(1.0 / 3), 0.333333333333);
}

TEST(TrajectoryCsv, HeaderAndRows) {
    const auto traj = run(SimConfig{make_linear(1, 1), 1.0, 0.5, 3});
    std::ostringstream out;
    write_trajectory_csv(out, traj);
    EXPECT_EQ(out.str(),
              "t,price,quantity,revenue,jumped,segments\n"
              "1,0.5,0.5,0.25,0,1\n"
              "2,0.416666666667,0.625,0.260416666667,0,1\n"
              "3,0.5,0.5,0.25,1,2\n");
}

TEST(SweepCsv, Header) {
    const std::vector<double> grid{0.0};
    const auto rows = delta_sweep(make_linear(1, 1), 1.0, grid, 10);
    std::ostringstream out;
    write_sweep_csv(out, rows);
    EXPECT_EQ(out.str(), "delta,p_map_hat,recurrence_gap,collapsed,monopolist_visits\n0,0.5,1,1,5\n");
}

TEST(BoundReportJson, NullsAndReasons) {
    const auto j = to_json(bound_report(make_linear(1, 1), 1.0, 0.5));
    EXPECT_TRUE(j.at("upper_bound").is_null());
    EXPECT_TRUE(j.at("reasons").contains("upper_bound"));
    EXPECT_TRUE(j.at("collapse_predicted").is_null());
    EXPECT_EQ(j.at("delta_bar_ser").get<double>(), 0.916666666667);
    EXPECT_EQ(j.at("asymptotic_lower").get<double>(), 0.25);
    EXPECT_EQ(j.at("asymptotic_lower_source"), "linear");
    EXPECT_EQ(j.at("family"), "linear");

    const auto k = to_json(bound_report(make_linear(1, 1), 1.0, 0.95));
    EXPECT_EQ(k.at("upper_bound").get<double>(), 0.3);
    EXPECT_EQ(k.at("upper_bound_stated_form").get<double>(), 0.35);
    EXPECT_FALSE(k.at("reasons").contains("upper_bound"));
}

TEST(ValidationReportJson, EmptyArraysNotNulls) {
    const auto sim = simulate(SimConfig{make_linear(1, 1), 1.0, 0.5, 5});
    const auto j = to_json(validate(sim.records, sim.states, key_quantities(make_linear(1, 1), 1.0)));
    for (const char* key : {"band_violations", "monotonicity_violations", "certificate_violations",
                            "pent_up_violations"}) {
        ASSERT_TRUE(j.at(key).is_array()) << key;
        EXPECT_TRUE(j.at(key).empty()) << key;
    }
    EXPECT_EQ(j.at("monopolist_visits").size(), 3u);
}
