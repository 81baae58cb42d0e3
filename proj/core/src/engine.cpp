#include "smlab/engine.hpp"

#include <algorithm>
#include <cmath>

#include "smlab/errors.hpp"

namespace smlab {

double accumulation_factor(double delta, int t) {
    if (std::abs(1.0 - delta) < 1e-12) {
        return static_cast<double>(t);
    }
    return (1.0 - std::pow(delta, t)) / (1.0 - delta);
}

void SimConfig::validate() const {
    if (!(supply > 0.0)) {
        throw InvalidArgument("supply must be positive");
    }
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw InvalidArgument("delta must lie in [0, 1]");
    }
    if (steps < 1) {
        throw InvalidArgument("steps must be at least 1");
    }
    if (!(tie_tol > 0.0)) {
        throw InvalidArgument("tie tolerance must be positive");
    }
}

PentUpState::PentUpState(DemandCurve curve, double delta) : curve_(std::move(curve)), delta_(delta) {}

double PentUpState::pent_up(double p) const {
    if (segments_.empty() || p > last_price_) {
        return 0.0;
    }
    auto it = std::lower_bound(segments_.begin(), segments_.end(), p,
                               [](const Segment& s, double x) { return s.p_hi < x; });
    return it->alpha * curve_.eval(p) - it->beta;
}

double PentUpState::total_demand(double p) const {
    if (!(p >= 0.0)) {
        throw InvalidArgument("price must be nonnegative");
    }
    return delta_ * pent_up(p) + curve_.eval(p);
}

std::vector<LinearPiece> PentUpState::demand_pieces() const {
    struct Region {
        double lo, hi, alpha, beta;
    };
    const double top = curve_.domain_max();
    std::vector<Region> regions;
    regions.reserve(segments_.size() + 1);
    for (const auto& s : segments_) {
        if (s.p_lo >= top) {
            break;
        }
        regions.push_back({s.p_lo, std::min(s.p_hi, top), delta_ * s.alpha + 1.0, delta_ * s.beta});
    }
    const double start = segments_.empty() ? 0.0 : last_price_;
    if (start < top) {
        regions.push_back({start, top, 1.0, 0.0});
    }

    const auto& q = curve_.pieces();
    std::vector<LinearPiece> out;
    out.reserve(regions.size() + q.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < regions.size() && j < q.size()) {
        const auto& r = regions[i];
        const auto& c = q[j];
        const double lo = std::max(r.lo, c.lo);
        const double hi = std::min(r.hi, c.hi);
        if (hi > lo) {
            out.push_back({lo, hi, r.alpha * c.intercept - r.beta, r.alpha * c.slope});
        }
        if (r.hi < c.hi) {
            ++i;
        } else if (c.hi < r.hi) {
            ++j;
        } else {
            ++i;
            ++j;
        }
    }
    return out;
}

std::optional<double> PentUpState::closed_form_demand(double p) const {
    if (p > running_min_) {
        return std::nullopt;
    }
    return accumulation_factor(delta_, round_) * curve_.eval(p) - b_;
}

PentUpState new_state(const SimConfig& config) {
    config.validate();
    return PentUpState(config.curve, config.delta);
}

double total_demand(const PentUpState& state, double p) { return state.total_demand(p); }

StepRecord step(PentUpState& state, const SimConfig& config) {
    if (!(state.curve_.at_zero() > 0.0)) {
        throw NoDemand("no demand: Q(0) = 0");
    }
    if (config.delta != state.delta_) {
        throw InvalidArgument("config delta differs from the state's delta");
    }
    const auto pieces = state.demand_pieces();
    const auto best = maximize_revenue(pieces, config.supply, config.tie_tol);
    const double p = best.price;
    const double q = std::min(config.supply, best.demand);

    StepRecord rec;
    rec.t = state.round_;
    rec.price = p;
    rec.quantity = q;
    rec.revenue = p * q;
    rec.jumped = state.round_ > 1 && p >= state.last_price_;

    // Z_t = D_t - q_t on [0, p_t], zero above.
    const double delta = state.delta_;
    auto& segs = state.segments_;
    for (auto& s : segs) {
        s.alpha = delta * s.alpha + 1.0;
        s.beta = delta * s.beta;
    }
    if (segs.empty() || p > state.last_price_) {
        segs.push_back({segs.empty() ? 0.0 : state.last_price_, p, 1.0, 0.0});
    } else {
        auto it = std::lower_bound(segs.begin(), segs.end(), p,
                                   [](const Segment& s, double x) { return s.p_hi < x; });
        it->p_hi = p;
        segs.erase(it + 1, segs.end());
    }
    for (auto& s : segs) {
        s.beta += q;
    }

    state.b_ = delta * (state.b_ + q);
    state.last_price_ = p;
    state.running_min_ = std::min(state.running_min_, p);
    ++state.round_;

    rec.segment_count = static_cast<int>(segs.size());
    return rec;
}

std::vector<StepRecord> run(const SimConfig& config) {
    auto state = new_state(config);
    std::vector<StepRecord> out;
    out.reserve(static_cast<std::size_t>(config.steps));
    for (int i = 0; i < config.steps; ++i) {
        out.push_back(step(state, config));
    }
    return out;
}

Simulation simulate(const SimConfig& config) {
    auto state = new_state(config);
    Simulation sim;
    sim.records.reserve(static_cast<std::size_t>(config.steps));
    sim.states.reserve(static_cast<std::size_t>(config.steps) + 1);
    for (int i = 0; i < config.steps; ++i) {
        sim.states.push_back(state);
        sim.records.push_back(step(state, config));
    }
    sim.states.push_back(std::move(state));
    return sim;
}

double revenue_diff(const PentUpState& state, double p, const KeyQuantities& kq) {
    return p * state.total_demand(p) - kq.rev_mon;
}

}  // namespace smlab
