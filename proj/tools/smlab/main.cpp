#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "smlab/commands.hpp"
#include "smlab/errors.hpp"

namespace {

using namespace smlab::cli;

struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> demand;
    std::optional<double> epsilon;
    std::optional<double> c;
    std::optional<double> m;
    std::optional<std::string> curve_file;
    std::optional<double> supply;
    std::optional<double> delta;
    std::optional<std::string> delta_grid;
    std::optional<int> steps;
    std::optional<std::uint64_t> seed;
    std::optional<double> burn_in;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::string plot;
    bool plot_given = false;
};

void add_common(CLI::App& sub, Flags& f) {
    sub.add_option("--config", f.config, "JSON run configuration; flags override it");
    sub.add_option("--demand", f.demand, "linear | q_epsilon | q_zero | custom");
    sub.add_option("--epsilon", f.epsilon, "q_epsilon parameter");
    sub.add_option("--c", f.c, "linear intercept Q(0)");
    sub.add_option("--m", f.m, "linear slope magnitude");
    sub.add_option("--curve", f.curve_file, "price,quantity file for --demand custom");
    sub.add_option("--supply", f.supply, "block capacity s");
    auto* d = sub.add_option("--delta", f.delta, "decay factor in [0, 1]");
    auto* g = sub.add_option("--delta-grid", f.delta_grid, "START:STOP:COUNT");
    d->excludes(g);
    sub.add_option("--steps", f.steps, "rounds to simulate");
    sub.add_option("--seed", f.seed, "seed for lemma sampling");
    sub.add_option("--burn-in", f.burn_in, "fraction of rounds discarded by the estimator");
    sub.add_option("--out", f.out, "output file (default stdout)");
    sub.add_option("--format", f.format, "csv | json");
    sub.add_option("--plot", f.plot, "write an SVG plot (default OUT.svg)")->expected(0, 1);
}

RunConfig resolve(const Flags& f) {
    RunConfig cfg = f.config ? load_config(*f.config) : RunConfig{};
    if (f.demand) {
        cfg.family = *f.demand;
    }
    if (f.epsilon) {
        cfg.epsilon = *f.epsilon;
        if (!f.demand && !f.config) {
            cfg.family = "q_epsilon";
        }
    }
    if (f.c) {
        cfg.c = *f.c;
    }
    if (f.m) {
        cfg.m = *f.m;
    }
    if (f.curve_file) {
        cfg.curve_file = *f.curve_file;
    }
    if (f.supply) {
        cfg.supply = *f.supply;
    }
    if (f.delta) {
        cfg.delta = *f.delta;
        cfg.grid.reset();
    }
    if (f.delta_grid) {
        cfg.grid = parse_delta_grid(*f.delta_grid);
        cfg.delta.reset();
    }
    if (f.steps) {
        cfg.steps = *f.steps;
    }
    if (f.seed) {
        cfg.seed = *f.seed;
    }
    if (f.burn_in) {
        cfg.burn_in_fraction = *f.burn_in;
    }
    if (f.out) {
        cfg.out = *f.out;
    }
    if (f.format) {
        cfg.format = parse_format(*f.format);
    }
    if (f.plot_given) {
        if (!f.plot.empty()) {
            cfg.plot = f.plot;
        } else if (!cfg.out.empty()) {
            cfg.plot = cfg.out.string() + ".svg";
        } else {
            cfg.plot = "plot.svg";
        }
    }
    apply_environment(cfg);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial monopoly pricing with quasi-patient users"};
    app.require_subcommand(1);

    Flags flags;
    using Command = std::function<int(const RunConfig&, std::ostream&, std::ostream&)>;
    const std::pair<const char*, Command> commands[] = {
        {"quantities", cmd_quantities}, {"simulate", cmd_simulate}, {"sweep", cmd_sweep},
        {"bounds", cmd_bounds},         {"verify", cmd_verify}};
    const char* descriptions[] = {"print the key quantities of a demand curve", "simulate one price trajectory",
                                  "estimate the minimum admission price over a delta grid",
                                  "report the analytic bounds for (Q, s, delta)",
                                  "run every invariant check on one trajectory"};
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        auto* sub = app.add_subcommand(commands[i].first, descriptions[i]);
        add_common(*sub, flags);
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (!subs[i]->parsed()) {
                continue;
            }
            flags.plot_given = subs[i]->count("--plot") > 0;
            const RunConfig cfg = resolve(flags);
            if (cfg.out.empty()) {
                return commands[i].second(cfg, std::cout, std::cerr);
            }
            std::ofstream file(cfg.out);
            if (!file) {
                throw ConfigError("cannot write " + cfg.out.string());
            }
            return commands[i].second(cfg, file, std::cerr);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const smlab::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitViolation;
    }
    return kExitConfig;
}
