// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "smlab/smlab.hpp"

using namespace smlab;

namespace {

struct Result {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

const DemandCurve kLinear = make_linear(1, 1);

std::vector<StepRecord> linear_run(double delta, int steps) { return run(SimConfig{kLinear, 1.0, delta, steps}); }

double min_price(std::span<const StepRecord> rs) {
    double m = INFINITY;
    for (const auto& r : rs) {
        m = std::min(m, r.price);
    }
    return m;
}

double rev3_formula(double d) {
    const double n = 2 * d + d * d + 4;
    return n * n / (64 * (1 + d + d * d));
}

Result example_one_golden() {
    Result res;
    for (double d : {0.1, 0.5, 0.9}) {
        const auto rs = linear_run(d, 3);
        res.require(rs[0].price == 0.5 && rs[0].quantity == 0.5 && rs[0].revenue == 0.25,
                    "round 1 not exact at delta " + num(d));
        const double p2 = (2 + d) / (4 * (1 + d));
        const double rev2 = (2 + d) * (2 + d) / (16 * (1 + d));
        res.require(std::abs(rs[1].price - p2) <= 1e-10, "p2 at delta " + num(d) + " = " + num(rs[1].price));
        res.require(std::abs(rs[1].revenue - rev2) <= 1e-10, "REV2 at delta " + num(d));
        if (d == 0.9) {
            const double p3 = (2 * d + d * d + 4) / (8 * (1 + d + d * d));
            res.require(std::abs(rs[2].price - p3) <= 1e-10, "p3 at 0.9 = " + num(rs[2].price));
        }
    }
    if (res.pass) {
        res.detail = "p2(0.5) = " + num(linear_run(0.5, 2)[1].price);
    }
    return res;
}

Result jump_threshold() {
    Result res;
    const auto low = linear_run(0.82, 3);
    const auto high = linear_run(0.84, 3);
    res.require(low[2].price == 0.5 && low[2].jumped, "delta 0.82 did not jump (p3 = " + num(low[2].price) + ")");
    res.require(high[2].price < high[1].price && !high[2].jumped, "delta 0.84 jumped");
    const double d_star = 2 * std::sqrt(2.0) - 2;
    res.require(rev3_formula(d_star - 1e-10) - 0.25 < 0, "REV3 - 0.25 not negative just below delta*");
    res.require(rev3_formula(d_star + 1e-10) - 0.25 > 0, "REV3 - 0.25 not positive just above delta*");
    res.require(rev3_formula(0.82) < 0.25 && rev3_formula(0.84) > 0.25, "REV3 sign at 0.82/0.84");
    if (res.pass) {
        res.detail = "p3(0.82) = 0.5, p3(0.84) = " + num(high[2].price);
    }
    return res;
}

Result figure_reproduction() {
    Result res;
    const auto traj = linear_run(0.5, 100);
    const double m = estimate_map(traj, key_quantities(kLinear, 1.0)).p_map_hat;
    res.require(m >= 0.353 && m <= 0.373, "tail minimum " + num(m));
    if (res.pass) {
        res.detail = "tail minimum " + num(m);
    }
    return res;
}

Result lower_bound_soundness() {
    Result res;
    std::string mins;
    for (double d : {0.25, 0.5, 0.75}) {
        const auto traj = linear_run(d, 500);
        for (const auto& r : traj) {
            const double bound = (1 - d) / (2 * (1 - std::pow(d, r.t)));
            if (r.price < bound - 1e-9) {
                res.require(false, "delta " + num(d) + " t " + std::to_string(r.t) + " below p*_t");
                break;
            }
        }
        const double tail = estimate_map(traj, key_quantities(kLinear, 1.0)).p_map_hat;
        res.require(tail >= (1 - d) / 2 - 1e-9, "delta " + num(d) + " tail min " + num(tail));
        mins += (mins.empty() ? "" : ", ") + num(tail);
    }
    if (res.pass) {
        res.detail = "tail minima " + mins;
    }
    return res;
}

Result collapse() {
    Result res;
    const auto q = make_q_epsilon(0.1);
    for (const auto& r : run(SimConfig{q, 1.0, 0.5, 200})) {
        if (std::abs(r.price - 0.5) > 1e-9) {
            res.require(false, "q_epsilon(0.1) left p_mon at t " + std::to_string(r.t));
            break;
        }
    }
    const auto q0 = make_q_epsilon(0);
    for (double d : {0.3, 0.9}) {
        for (const auto& r : run(SimConfig{q0, 1.0, d, 100})) {
            if (std::abs(r.price - 0.5) > 1e-9) {
                res.require(false, "q_zero left p_mon at delta " + num(d));
                break;
            }
        }
    }
    if (res.pass) {
        res.detail = "all prices 0.5";
    }
    return res;
}

Result upper_bound_large_delta() {
    Result res;
    const double d = 0.95;
    const auto kq = key_quantities(kLinear, 1.0);
    const double ub = p_ser_delta(kLinear, 1.0, d);
    res.require(std::abs(ub - 0.30) <= 1e-12, "p_ser^delta = " + num(ub));
    const auto sim = simulate(SimConfig{kLinear, 1.0, d, 500});
    const auto est = estimate_map(sim.records, kq);
    res.require(est.p_map_hat <= 0.30 + 1e-6, "tail minimum " + num(est.p_map_hat));
    const auto rep = validate(sim.records, sim.states, kq);
    const auto visits = std::count_if(rep.monopolist_visits.begin(), rep.monopolist_visits.end(),
                                      [&](int t) { return t > est.burn_in; });
    res.require(visits >= 2, "only " + std::to_string(visits) + " visits to p_mon after burn-in");
    if (res.pass) {
        res.detail = "tail minimum " + num(est.p_map_hat) + ", " + std::to_string(visits) + " p_mon visits";
    }
    return res;
}

Result invariant_battery() {
    Result res;
    std::mt19937_64 rng(20240601);
    int runs = 0;
    double worst_lemma = 0.0;
    for (int c = 0; c < 50; ++c) {
        const auto q = oracle::random_strict_curve(rng);
        const double s = oracle::uniform(rng, 0.3, 1.5) * q.at_zero();
        const auto kq = key_quantities(q, s);
        for (double d : {0.2, 0.5, 0.8, 0.95}) {
            const auto sim = simulate(SimConfig{q, s, d, 200});
            const auto rep = validate(sim.records, sim.states, kq, 1e-9);
            const std::string where = "curve " + std::to_string(c) + " delta " + num(d);
            res.require(rep.band_violations.empty(), where + ": band");
            res.require(rep.monotonicity_violations.empty(), where + ": monotone-or-jump");
            res.require(rep.certificate_violations.empty(), where + ": certificate");
            for (const auto& l : lemma_suite(sim.states, 1000, rng())) {
                worst_lemma = std::max(worst_lemma, l.max_violation);
                res.require(l.max_violation <= 1e-9, where + ": " + l.id + " " + num(l.max_violation));
            }
            ++runs;
        }
    }
    if (res.pass) {
        res.detail = std::to_string(runs) + " runs clean, worst lemma residual " + num(worst_lemma);
    }
    return res;
}

Result oracle_equivalence() {
    Result res;
    std::mt19937_64 rng(777);
    double worst = 0.0;
    for (int c = 0; c < 20; ++c) {
        const auto q = oracle::random_strict_curve(rng, 3);
        const double s = oracle::uniform(rng, 0.3, 1.5) * q.at_zero();
        const double d = oracle::uniform(rng, 0, 1);
        const int steps = std::uniform_int_distribution<int>(1, 6)(rng);
        const auto traj = run(SimConfig{q, s, d, steps});
        const auto grid = oracle::brute_force_run(q, s, d, steps, 1e-5);
        for (int t = 0; t < steps; ++t) {
            const double gap = std::abs(traj[static_cast<std::size_t>(t)].price - grid[static_cast<std::size_t>(t)].price);
            worst = std::max(worst, gap);
            if (gap > 1e-4) {
                res.require(false, "config " + std::to_string(c) + " t " + std::to_string(t + 1) + " gap " + num(gap));
            }
        }
    }
    if (res.pass) {
        res.detail = "worst price gap " + num(worst);
    }
    return res;
}

Result key_quantity_exactness() {
    Result res;
    const auto kq = key_quantities(kLinear, 1.0);
    res.require(std::abs(kq.p_mon - 0.5) <= 1e-12, "p_mon");
    res.require(std::abs(kq.p_ser - 0.25) <= 1e-12, "p_ser");
    res.require(std::abs(kq.p_bar_ser - 1.0 / 3) <= 1e-12, "p_bar_ser");
    res.require(std::abs(kq.delta_bar_ser - 11.0 / 12) <= 1e-12, "delta_bar_ser");
    for (double e : {0.1, 0.25, 0.5}) {
        const auto k = key_quantities(make_q_epsilon(e), 1.0);
        const bool ok = std::abs(k.p_ser - 0.25) <= 1e-12 && std::abs(k.q_ser - (1 + e) / 2) <= 1e-12 &&
                        std::abs(k.p_bar_ser - 1 / (2 * (1 + e))) <= 1e-12 &&
                        std::abs(k.q_bar_ser - (0.5 + e * e / (1 + e))) <= 1e-12 &&
                        std::abs(k.delta_bar_ser - (1 - e / 2 + e * e / (1 + e))) <= 1e-12;
        res.require(ok, "q_epsilon(" + num(e) + ") quantities");
    }
    for (double e : {0.05, 0.1, 0.25}) {
        const auto t = tightness_thresholds(e);
        res.require(t.upper - t.lower < 2 * e, "tightness gap at " + num(e));
    }
    if (res.pass) {
        res.detail = "delta_bar_ser " + num(kq.delta_bar_ser);
    }
    return res;
}

Result sweep_shape() {
    Result res;
    const std::vector<double> grid{0, 0.25, 0.5, 0.75, 1};
    const auto rows = delta_sweep(kLinear, 1.0, grid, 100);
    std::string values;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        values += (i ? ", " : "") + num(rows[i].p_map_hat);
        if (i > 0) {
            res.require(rows[i].p_map_hat <= rows[i - 1].p_map_hat + 1e-12, "increase at delta " + num(grid[i]));
        }
    }
    res.require(rows.front().p_map_hat == 0.5, "delta 0 row " + num(rows.front().p_map_hat));
    res.require(rows.back().p_map_hat >= 0.25, "delta 1 row " + num(rows.back().p_map_hat));
    res.detail = res.pass ? "p_map_hat " + values : res.detail + " (" + values + ")";
    return res;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Result()>>> criteria{
        {"Example 1 golden values", example_one_golden},
        {"jump threshold brackets 2*sqrt(2)-2", jump_threshold},
        {"minimum price at delta 0.5 near 0.363", figure_reproduction},
        {"lower-bound soundness", lower_bound_soundness},
        {"collapse to the monopoly price", collapse},
        {"upper bound at delta 0.95", upper_bound_large_delta},
        {"randomized invariant battery", invariant_battery},
        {"grid brute-force equivalence", oracle_equivalence},
        {"key-quantity exactness", key_quantity_exactness},
        {"delta-sweep shape", sweep_shape},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %2zu  %s: %s\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, r.detail.c_str());
        failed += r.pass ? 0 : 1;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%zu/%zu criteria passed in %.1f s\n", criteria.size() - static_cast<std::size_t>(failed),
                criteria.size(), secs);
    return failed == 0 ? 0 : 1;
}
