#include "smlab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <vector>

#include "smlab/analysis.hpp"
#include "smlab/bounds.hpp"
#include "smlab/errors.hpp"
#include "smlab/io.hpp"
#include "smlab/svg.hpp"

namespace smlab::cli {

using nlohmann::json;

namespace {

constexpr double kCheckTol = 1e-9;
constexpr int kLemmaSamples = 1000;

double scalar_delta(const RunConfig& config, const char* command) {
    if (!config.delta) {
        throw ConfigError(std::string(command) + " needs a scalar --delta");
    }
    return *config.delta;
}

SimConfig sim_config(const RunConfig& config, const DemandCurve& curve, double delta) {
    return SimConfig{curve, config.supply, delta, config.steps, config.tie_tol};
}

KeyQuantities quantities_or_config_error(const DemandCurve& curve, const RunConfig& config) {
    try {
        return key_quantities(curve, config.supply, config.tie_tol);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
}

void write_plot(const RunConfig& config, std::span<const double> xs, std::span<const double> ys,
                const PlotLabels& labels) {
    if (!config.plot) {
        return;
    }
    std::ofstream f(*config.plot);
    if (!f) {
        throw ConfigError("cannot write plot " + config.plot->string());
    }
    f << line_plot_svg(xs, ys, labels);
}

std::size_t count(const ValidationReport& r) {
    return r.band_violations.size() + r.monotonicity_violations.size() + r.certificate_violations.size() +
           r.pent_up_violations.size();
}

double max_value(const std::vector<Violation>& vs) {
    double m = 0.0;
    for (const auto& v : vs) {
        m = std::max(m, v.value);
    }
    return m;
}

json check(const std::string& name, std::size_t violations, double max_residual) {
    return json{{"name", name},
                {"violations", violations},
                {"max_residual", round_significant(max_residual)},
                {"passed", violations == 0}};
}

}  // namespace

int cmd_quantities(const RunConfig& config, std::ostream& out, std::ostream&) {
    const auto curve = config.curve();
    const auto kq = quantities_or_config_error(curve, config);
    const bool weak = !curve.strict();
    std::optional<double> adjusted;
    if (weak) {
        adjusted = curve.inverse_max_price(kq.q_ser);
    }
    if (config.format == Format::Json) {
        json j = to_json(kq);
        j["family"] = family_name(curve.family());
        j["supply"] = round_significant(config.supply);
        j["weakly_decreasing"] = weak;
        j["adjusted_p_bar_ser"] = adjusted ? json(round_significant(*adjusted)) : json(nullptr);
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "quantity,value\n";
    const std::pair<const char*, double> rows[] = {
        {"p_mon", kq.p_mon},         {"q_mon", kq.q_mon},         {"rev_mon", kq.rev_mon},
        {"p_ser", kq.p_ser},         {"q_ser", kq.q_ser},         {"p_bar_ser", kq.p_bar_ser},
        {"q_bar_ser", kq.q_bar_ser}, {"delta_bar_ser", kq.delta_bar_ser}};
    for (const auto& [name, value] : rows) {
        out << name << ',' << format_number(value) << '\n';
    }
    out << "weakly_decreasing," << (weak ? 1 : 0) << '\n';
    if (adjusted) {
        out << "adjusted_p_bar_ser," << format_number(*adjusted) << '\n';
    }
    return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const double delta = scalar_delta(config, "simulate");
    const auto curve = config.curve();
    const auto kq = quantities_or_config_error(curve, config);
    const auto sim = simulate(sim_config(config, curve, delta));
    const auto report = validate(sim.records, sim.states, kq, kCheckTol);
    if (!report.ok()) {
        err << "validation failed; trajectory withheld\n" << to_json(report).dump(2) << '\n';
        return kExitViolation;
    }
    if (config.format == Format::Json) {
        out << json{{"delta", round_significant(delta)}, {"trajectory", to_json(sim.records)}}.dump(2) << '\n';
    } else {
        write_trajectory_csv(out, sim.records);
    }
    std::vector<double> ts;
    std::vector<double> ps;
    for (const auto& r : sim.records) {
        ts.push_back(r.t);
        ps.push_back(r.price);
    }
    write_plot(config, ts, ps, {"price dynamics, delta = " + format_number(delta), "t", "price"});
    return kExitOk;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::vector<double> deltas;
    if (config.grid) {
        deltas = delta_grid(config.grid->start, config.grid->stop, config.grid->count);
    } else if (config.delta) {
        deltas = {*config.delta};
    } else {
        throw ConfigError("sweep needs --delta-grid or --delta");
    }
    const auto curve = config.curve();
    quantities_or_config_error(curve, config);
    SweepOptions options;
    options.burn_in_fraction = config.burn_in_fraction;
    options.tie_tol = config.tie_tol;
    options.tol = kCheckTol;
    options.validate = true;
    const auto rows = delta_sweep(curve, config.supply, deltas, config.steps, options);

    int bad = 0;
    for (const auto& r : rows) {
        if (r.violations > 0) {
            err << "validation failed at delta = " << format_number(r.delta) << " (" << r.violations
                << " findings)\n";
            ++bad;
        }
    }
    if (bad > 0) {
        err << "sweep withheld\n";
        return kExitViolation;
    }
    if (config.format == Format::Json) {
        out << to_json(std::span<const SweepRow>(rows)).dump(2) << '\n';
    } else {
        write_sweep_csv(out, rows);
    }
    std::vector<double> ys;
    for (const auto& r : rows) {
        ys.push_back(r.p_map_hat);
    }
    write_plot(config, deltas, ys, {"estimated minimum admission price", "delta", "p_map_hat"});
    return kExitOk;
}

int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream&) {
    const double delta = scalar_delta(config, "bounds");
    const auto curve = config.curve();
    quantities_or_config_error(curve, config);
    out << to_json(bound_report(curve, config.supply, delta)).dump(2) << '\n';
    return kExitOk;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const double delta = scalar_delta(config, "verify");
    const auto curve = config.curve();
    const auto kq = quantities_or_config_error(curve, config);
    const auto sim = simulate(sim_config(config, curve, delta));
    const auto report = validate(sim.records, sim.states, kq, kCheckTol);
    const auto lemmas = lemma_suite(sim.states, kLemmaSamples, config.seed);

    json checks = json::array();
    std::size_t failures = count(report);
    checks.push_back(check("price_band", report.band_violations.size(), max_value(report.band_violations)));
    checks.push_back(
        check("monotone_or_jump", report.monotonicity_violations.size(), max_value(report.monotonicity_violations)));
    checks.push_back(
        check("certificate", report.certificate_violations.size(), max_value(report.certificate_violations)));
    checks.push_back(check("pent_up", report.pent_up_violations.size(), max_value(report.pent_up_violations)));
    for (const auto& l : lemmas) {
        const bool bad = l.max_violation > kCheckTol;
        failures += bad ? 1 : 0;
        json c = check(l.id, bad ? 1 : 0, std::max(0.0, l.max_violation));
        c["samples"] = l.samples;
        checks.push_back(c);
    }

    // F_t < 0 below the first root, so no round may be priced there.
    std::size_t forbidden = 0;
    double forbidden_residual = 0.0;
    for (const auto& r : sim.records) {
        if (const auto fi = forbidden_interval(curve, config.supply, delta, r.t)) {
            const double breach = fi->root - r.price;
            if (breach > kCheckTol) {
                ++forbidden;
                forbidden_residual = std::max(forbidden_residual, breach);
            }
        }
    }
    failures += forbidden;
    checks.push_back(check("forbidden_interval", forbidden, forbidden_residual));

    json doc{{"delta", round_significant(delta)}, {"steps", config.steps}, {"seed", config.seed}};
    doc["checks"] = checks;
    doc["collapsed"] = report.collapsed;
    doc["monopolist_visits"] = report.monopolist_visits.size();
    if (sim.records.size() >= 10) {
        doc["estimate"] = to_json(estimate_map(sim.records, kq, config.burn_in_fraction, kCheckTol));
    } else {
        doc["estimate"] = nullptr;
    }
    doc["bounds"] = to_json(bound_report(curve, config.supply, delta));
    doc["passed"] = failures == 0;
    out << doc.dump(2) << '\n';
    if (failures > 0) {
        err << "verification failed: " << failures << " findings\n";
        return kExitViolation;
    }
    return kExitOk;
}

}  // namespace smlab::cli
