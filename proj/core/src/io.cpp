#include "smlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace smlab {

using nlohmann::json;

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

double round_significant(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

void write_trajectory_csv(std::ostream& out, std::span<const StepRecord> trajectory) {
    out << kTrajectoryCsvHeader << '\n';
    for (const auto& r : trajectory) {
        out << r.t << ',' << format_number(r.price) << ',' << format_number(r.quantity) << ','
            << format_number(r.revenue) << ',' << (r.jumped ? 1 : 0) << ',' << r.segment_count << '\n';
    }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << kSweepCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.delta) << ',' << format_number(r.p_map_hat) << ',' << r.recurrence_gap << ','
            << (r.collapsed ? 1 : 0) << ',' << r.monopolist_visits << '\n';
    }
}

json to_json(const KeyQuantities& kq) {
    return json{{"p_mon", round_significant(kq.p_mon)},
                {"q_mon", round_significant(kq.q_mon)},
                {"rev_mon", round_significant(kq.rev_mon)},
                {"p_ser", round_significant(kq.p_ser)},
                {"q_ser", round_significant(kq.q_ser)},
                {"p_bar_ser", round_significant(kq.p_bar_ser)},
                {"q_bar_ser", round_significant(kq.q_bar_ser)},
                {"delta_bar_ser", round_significant(kq.delta_bar_ser)}};
}

json to_json(std::span<const StepRecord> trajectory) {
    json arr = json::array();
    for (const auto& r : trajectory) {
        arr.push_back({{"t", r.t},
                       {"price", round_significant(r.price)},
                       {"quantity", round_significant(r.quantity)},
                       {"revenue", round_significant(r.revenue)},
                       {"jumped", r.jumped},
                       {"segments", r.segment_count}});
    }
    return arr;
}

json to_json(std::span<const SweepRow> rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"delta", round_significant(r.delta)},
                       {"p_map_hat", round_significant(r.p_map_hat)},
                       {"recurrence_gap", r.recurrence_gap},
                       {"collapsed", r.collapsed},
                       {"monopolist_visits", r.monopolist_visits}});
    }
    return arr;
}

json to_json(const AdmissionEstimate& e) {
    return json{{"p_map_hat", round_significant(e.p_map_hat)},
                {"recurrence_gap", e.recurrence_gap},
                {"burn_in", e.burn_in},
                {"horizon", e.horizon}};
}

namespace {

json optional_number(const std::optional<double>& v) {
    return v ? json(round_significant(*v)) : json(nullptr);
}

}  // namespace

json to_json(const BoundReport& r) {
    json j = to_json(r.kq);
    j["supply"] = round_significant(r.supply);
    j["delta"] = round_significant(r.delta);
    j["family"] = r.family;
    j["weakly_decreasing"] = r.weakly_decreasing;
    j["adjusted_p_bar_ser"] = optional_number(r.adjusted_p_bar_ser);
    j["upper_bound"] = optional_number(r.upper_bound.value);
    j["upper_bound_stated_form"] = optional_number(r.upper_bound_stated_form);

    const auto& lower = r.asymptotic_lower.value;
    j["asymptotic_lower"] = lower ? json(round_significant(lower->value)) : json(nullptr);
    j["asymptotic_lower_source"] = lower ? json(to_string(lower->source)) : json(nullptr);
    j["collapse_predicted"] = r.collapse_predicted.value ? json(*r.collapse_predicted.value) : json(nullptr);
    const auto& tight = r.tightness.value;
    j["tightness_lower"] = tight ? json(round_significant(tight->lower)) : json(nullptr);
    j["tightness_upper"] = tight ? json(round_significant(tight->upper)) : json(nullptr);

    json reasons = json::object();
    if (!r.upper_bound.has_value()) {
        reasons["upper_bound"] = r.upper_bound.reason;
    }
    if (!r.asymptotic_lower.has_value()) {
        reasons["asymptotic_lower"] = r.asymptotic_lower.reason;
    }
    if (!r.collapse_predicted.has_value()) {
        reasons["collapse_predicted"] = r.collapse_predicted.reason;
    }
    if (!r.tightness.has_value()) {
        reasons["tightness"] = r.tightness.reason;
    }
    j["reasons"] = reasons;
    return j;
}

namespace {

json violations_json(const std::vector<Violation>& vs) {
    json arr = json::array();
    for (const auto& v : vs) {
        arr.push_back({{"t", v.t}, {"value", v.value}});
    }
    return arr;
}

}  // namespace

json to_json(const ValidationReport& r) {
    return json{{"band_violations", violations_json(r.band_violations)},
                {"monotonicity_violations", violations_json(r.monotonicity_violations)},
                {"certificate_violations", violations_json(r.certificate_violations)},
                {"pent_up_violations", violations_json(r.pent_up_violations)},
                {"monopolist_visits", r.monopolist_visits},
                {"collapsed", r.collapsed}};
}

}  // namespace smlab
