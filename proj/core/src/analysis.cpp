#include "smlab/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "smlab/bounds.hpp"
#include "smlab/errors.hpp"

namespace smlab {

AdmissionEstimate estimate_map(std::span<const StepRecord> trajectory, [[maybe_unused]] const KeyQuantities& kq,
                               double burn_in_fraction, double tol) {
    if (trajectory.size() < 10) {
        throw InvalidArgument("admission estimate needs at least 10 rounds");
    }
    if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
        throw InvalidArgument("burn-in fraction must lie in [0, 1)");
    }
    const auto burn = static_cast<int>(std::floor(burn_in_fraction * static_cast<double>(trajectory.size())));
    return estimate_map_rounds(trajectory, burn, tol);
}

AdmissionEstimate estimate_map_rounds(std::span<const StepRecord> trajectory, int burn_in_rounds, double tol) {
    const auto horizon = static_cast<int>(trajectory.size());
    if (burn_in_rounds < 0 || burn_in_rounds >= horizon) {
        throw InvalidArgument("burn-in must leave a nonempty tail");
    }
    const auto tail = trajectory.subspan(static_cast<std::size_t>(burn_in_rounds));

    AdmissionEstimate est;
    est.burn_in = burn_in_rounds;
    est.horizon = horizon;
    est.p_map_hat = std::numeric_limits<double>::infinity();
    for (const auto& r : tail) {
        est.p_map_hat = std::min(est.p_map_hat, r.price);
    }

    int prev = burn_in_rounds;
    int gap = 0;
    for (std::size_t i = 0; i < tail.size(); ++i) {
        if (tail[i].price <= est.p_map_hat + tol) {
            const int round = burn_in_rounds + static_cast<int>(i) + 1;
            gap = std::max(gap, round - prev);
            prev = round;
        }
    }
    est.recurrence_gap = std::max(gap, horizon + 1 - prev);
    return est;
}

bool detect_collapse(std::span<const StepRecord> trajectory, const KeyQuantities& kq, double tol) {
    if (trajectory.empty()) {
        throw InvalidArgument("empty trajectory");
    }
    return std::all_of(trajectory.begin(), trajectory.end(),
                       [&](const StepRecord& r) { return std::abs(r.price - kq.p_mon) <= tol; });
}

namespace {

void check_pent_up(const PentUpState& s, int t, double tol, std::vector<Violation>& out) {
    const auto& segs = s.segments();
    if (segs.empty()) {
        return;
    }
    const auto& curve = s.curve();
    double worst_negative = 0.0;
    auto probe = [&](const Segment& seg, double p) {
        worst_negative = std::min(worst_negative, seg.alpha * curve(p) - seg.beta);
    };
    for (const auto& seg : segs) {
        probe(seg, seg.p_hi);
        probe(seg, seg.p_lo);
        for (const auto& k : curve.knots()) {
            if (k.price > seg.p_lo && k.price < seg.p_hi) {
                probe(seg, k.price);
            }
        }
    }
    if (worst_negative < -tol) {
        out.push_back({t, -worst_negative});
    }
    if (!curve.continuous()) {
        return;
    }
    const double at_top = std::abs(s.pent_up(s.last_price()));
    if (at_top > tol) {
        out.push_back({t, at_top});
    }
    for (std::size_t i = 1; i < segs.size(); ++i) {
        const double b = segs[i].p_lo;
        const double q = curve(b);
        const double jump = std::abs((segs[i - 1].alpha * q - segs[i - 1].beta) - (segs[i].alpha * q - segs[i].beta));
        if (jump > tol) {
            out.push_back({t, jump});
        }
    }
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

ValidationReport validate(std::span<const StepRecord> trajectory, std::span<const PentUpState> states,
                          const KeyQuantities& kq, double tol) {
    if (states.size() != trajectory.size() + 1) {
        throw InvalidArgument("expected one state per round plus the final state");
    }
    ValidationReport rep;
    for (std::size_t i = 0; i < trajectory.size(); ++i) {
        const auto& r = trajectory[i];
        const double p = r.price;
        if (p < kq.p_ser - tol) {
            rep.band_violations.push_back({r.t, kq.p_ser - p});
        } else if (p > kq.p_mon + tol) {
            rep.band_violations.push_back({r.t, p - kq.p_mon});
        }
        if (i > 0) {
            const double prev = trajectory[i - 1].price;
            if (!(p < prev + kTolerance) && std::abs(p - kq.p_mon) > kTolerance) {
                rep.monotonicity_violations.push_back({r.t, p - prev});
            }
        }
        const auto& before = states[i];
        const double f = certificate(before.curve(), kq, before.delta(), r.t, p);
        if (f < -tol) {
            rep.certificate_violations.push_back({r.t, -f});
        }
        check_pent_up(states[i + 1], r.t, tol, rep.pent_up_violations);
        if (std::abs(p - kq.p_mon) <= tol) {
            rep.monopolist_visits.push_back(r.t);
        }
    }
    rep.collapsed = !trajectory.empty() && detect_collapse(trajectory, kq, tol);
    return rep;
}

std::vector<LemmaCheck> lemma_suite(std::span<const PentUpState> states, int sample_count, std::uint64_t seed) {
    if (states.empty()) {
        throw InvalidArgument("no states to sample");
    }
    if (sample_count < 1) {
        throw InvalidArgument("sample count must be at least 1");
    }
    const auto& curve = states.front().curve();
    const double delta = states.front().delta();
    const double top = curve.domain_max();
    const auto rounds = static_cast<int>(states.size());

    // Price of round k is the last price recorded before round k + 1.
    auto price_of = [&](int k) { return states[static_cast<std::size_t>(k)].last_price(); };

    LemmaCheck difference{"demand_difference", 0.0, 0};
    LemmaCheck equality{"demand_equality", 0.0, 0};
    std::mt19937_64 rng(seed);
    for (int n = 0; n < sample_count; ++n) {
        const int t = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(rounds));
        double p = uniform01(rng) * top;
        double pp = uniform01(rng) * top;
        if (p > pp) {
            std::swap(p, pp);
        }
        const auto& s = states[static_cast<std::size_t>(t - 1)];
        const double lhs = s.total_demand(p) - s.total_demand(pp);
        const double dq = curve(p) - curve(pp);

        difference.max_violation = std::max(difference.max_violation, lhs - accumulation_factor(delta, t) * dq);
        ++difference.samples;

        int last = t - 1;
        while (last >= 1 && price_of(last) >= pp) {
            --last;
        }
        if (last == 0 || price_of(last) <= p) {
            const double expected = accumulation_factor(delta, t - last) * dq;
            equality.max_violation = std::max(equality.max_violation, std::abs(lhs - expected));
            ++equality.samples;
        }
    }
    return {difference, equality};
}

std::vector<double> delta_grid(double start, double stop, int count) {
    if (count < 1) {
        throw InvalidArgument("grid needs at least one point");
    }
    std::vector<double> grid(static_cast<std::size_t>(count));
    if (count == 1) {
        grid[0] = start;
        return grid;
    }
    for (int i = 0; i < count; ++i) {
        grid[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
    }
    grid.back() = stop;
    return grid;
}

std::vector<SweepRow> delta_sweep(const DemandCurve& curve, double supply, std::span<const double> deltas,
                                  int steps, const SweepOptions& options) {
    if (deltas.empty()) {
        throw InvalidArgument("delta grid is empty");
    }
    for (double d : deltas) {
        if (!(d >= 0.0 && d <= 1.0)) {
            throw InvalidArgument("grid deltas must lie in [0, 1]");
        }
    }
    if (!(options.burn_in_fraction >= 0.0 && options.burn_in_fraction < 1.0)) {
        throw InvalidArgument("burn-in fraction must lie in [0, 1)");
    }
    const auto kq = key_quantities(curve, supply, options.tie_tol);
    const int burn = static_cast<int>(std::floor(options.burn_in_fraction * steps));

    std::vector<SweepRow> rows(deltas.size());
    auto compute = [&](std::size_t i) {
        SimConfig config{curve, supply, deltas[i], steps, options.tie_tol};
        std::vector<StepRecord> traj;
        int violations = 0;
        if (options.validate) {
            auto sim = simulate(config);
            const auto rep = validate(sim.records, sim.states, kq, options.tol);
            violations = static_cast<int>(rep.band_violations.size() + rep.monotonicity_violations.size() +
                                          rep.certificate_violations.size() + rep.pent_up_violations.size());
            traj = std::move(sim.records);
        } else {
            traj = run(config);
        }
        const auto est = estimate_map_rounds(traj, burn, options.tol);
        SweepRow row;
        row.delta = deltas[i];
        row.p_map_hat = est.p_map_hat;
        row.recurrence_gap = est.recurrence_gap;
        row.collapsed = detect_collapse(traj, kq, options.tol);
        for (std::size_t k = 0; k < traj.size(); ++k) {
            if (static_cast<int>(k) >= burn && std::abs(traj[k].price - kq.p_mon) <= options.tol) {
                ++row.monopolist_visits;
            }
            if (traj[k].jumped && std::abs(traj[k].price - traj[k > 0 ? k - 1 : 0].price) > kTolerance) {
                ++row.jumps;
            }
        }
        row.final_price = traj.back().price;
        row.violations = violations;
        rows[i] = row;
    };

    unsigned workers = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    workers = std::min<unsigned>(workers, static_cast<unsigned>(deltas.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            compute(i);
        }
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < deltas.size(); i = next++) {
                try {
                    compute(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

}  // namespace smlab
