#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "smlab/demand.hpp"
#include "smlab/quantities.hpp"

namespace smlab {

/// Geometric pent-up accumulation 1 + delta + ... + delta^(t-1).
/// Evaluated as t when |1 - delta| < 1e-12.
double accumulation_factor(double delta, int t);

/// Pent-up demand on (p_lo, p_hi]: Z(p) = alpha * Q(p) - beta.
/// The first segment of a state also owns p = 0.
struct Segment {
    double p_lo = 0.0;
    double p_hi = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

struct SimConfig {
    DemandCurve curve;
    double supply = 1.0;
    double delta = 0.0;
    int steps = 1;
    double tie_tol = kTolerance;

    /// Throws InvalidArgument unless s > 0, 0 <= delta <= 1, steps >= 1, tie_tol > 0.
    void validate() const;
};

struct StepRecord {
    int t = 0;
    double price = 0.0;
    double quantity = 0.0;
    double revenue = 0.0;
    bool jumped = false;  // p_t >= p_{t-1}
    int segment_count = 0;
};

class PentUpState;
StepRecord step(PentUpState& state, const SimConfig& config);

/// Exact pent-up demand Z_{t-1} ahead of round t.
///
/// Segments tile [0, last_price] in increasing order; Z is identically zero
/// above last_price. Each round adds at most one segment.
class PentUpState {
public:
    PentUpState(DemandCurve curve, double delta);

    /// Round about to be played (1 for a fresh state).
    int round() const { return round_; }
    double last_price() const { return last_price_; }
    /// Minimum of all past prices, +inf before the first round.
    double running_min() const { return running_min_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const DemandCurve& curve() const { return curve_; }
    double delta() const { return delta_; }

    /// Z_{t-1}(p).
    double pent_up(double p) const;

    /// D_t(p) = delta * Z_{t-1}(p) + Q(p).
    double total_demand(double p) const;

    /// D_t as an affine piece list over [0, Q's domain_max].
    std::vector<LinearPiece> demand_pieces() const;

    /// a_t Q(p) - b_t, the closed form that holds for p at or below the
    /// running minimum. Empty above it.
    std::optional<double> closed_form_demand(double p) const;

private:
    friend StepRecord step(PentUpState& state, const SimConfig& config);

    DemandCurve curve_;
    double delta_;
    std::vector<Segment> segments_;
    double last_price_ = 0.0;
    double running_min_ = std::numeric_limits<double>::infinity();
    double b_ = 0.0;  // delta-discounted sum of past quantities
    int round_ = 1;
};

/// Z_0 = 0 for a validated config.
PentUpState new_state(const SimConfig& config);

/// D_t(p) of the state's upcoming round.
double total_demand(const PentUpState& state, double p);

/// Plays one round: picks p_t maximizing p * min(s, D_t(p)) (largest price
/// among ties within config.tie_tol), then rolls Z forward. Throws NoDemand
/// if Q(0) = 0.
StepRecord step(PentUpState& state, const SimConfig& config);

std::vector<StepRecord> run(const SimConfig& config);

/// Trajectory plus the state before every round and after the last one
/// (states.size() == records.size() + 1).
struct Simulation {
    std::vector<StepRecord> records;
    std::vector<PentUpState> states;
};

Simulation simulate(const SimConfig& config);

/// f_t(p) = p * D_t(p) - rev_mon.
double revenue_diff(const PentUpState& state, double p, const KeyQuantities& kq);

}  // namespace smlab
