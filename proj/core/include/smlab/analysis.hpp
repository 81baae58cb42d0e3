#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smlab/engine.hpp"
#include "smlab/quantities.hpp"

namespace smlab {

/// Finite-horizon estimate of the minimum admission price.
///
/// p_map_hat is the minimum price over rounds after the burn-in. The
/// recurrence gap is the longest wait, within that tail, between rounds
/// priced at or below p_map_hat + tol, counting the wait from the start of
/// the tail to the first such round and from the last one to the horizon.
/// A constant trajectory therefore has gap 1.
struct AdmissionEstimate {
    double p_map_hat = 0.0;
    int recurrence_gap = 0;
    int burn_in = 0;
    int horizon = 0;
};

/// Needs at least 10 rounds and 0 <= burn_in_fraction < 1; the burn-in is
/// floor(fraction * horizon) rounds.
AdmissionEstimate estimate_map(std::span<const StepRecord> trajectory, const KeyQuantities& kq,
                               double burn_in_fraction = 0.5, double tol = 1e-9);

/// Same estimator with an explicit burn-in round count; any nonempty tail.
AdmissionEstimate estimate_map_rounds(std::span<const StepRecord> trajectory, int burn_in_rounds,
                                      double tol = 1e-9);

/// Every price within tol of p_mon.
bool detect_collapse(std::span<const StepRecord> trajectory, const KeyQuantities& kq, double tol = 1e-9);

struct Violation {
    int t = 0;
    double value = 0.0;
};

struct ValidationReport {
    std::vector<Violation> band_violations;          // p_t outside [p_ser, p_mon]
    std::vector<Violation> monotonicity_violations;  // rose without landing on p_mon
    std::vector<Violation> certificate_violations;   // F_t(p_t) < 0
    std::vector<Violation> pent_up_violations;       // Z < 0, Z(p_t) != 0, or Z discontinuous
    std::vector<int> monopolist_visits;
    bool collapsed = false;

    bool ok() const {
        return band_violations.empty() && monotonicity_violations.empty() && certificate_violations.empty() &&
               pent_up_violations.empty();
    }
};

/// Checks a trajectory against the price band, the monotone-or-jump rule, the
/// F_t certificate and the pent-up invariants. `states` are the snapshots of
/// a Simulation (one per round plus the final state). Violations record the
/// offending round and the size of the breach. Throws InvalidArgument on
/// mismatched lengths.
ValidationReport validate(std::span<const StepRecord> trajectory, std::span<const PentUpState> states,
                          const KeyQuantities& kq, double tol = 1e-9);

struct LemmaCheck {
    std::string id;
    double max_violation = 0.0;
    int samples = 0;  // triples that met the lemma's hypothesis
};

/// Samples random (p, p', t) triples with p < p' and reports the largest
/// breach of
///   "demand_difference":  D_t(p) - D_t(p') <= a_t (Q(p) - Q(p'))
///   "demand_equality":    D_t(p) - D_t(p') == a_{t-T} (Q(p) - Q(p'))
///                         when p_T <= p (or T = 0) and p_t' >= p' for T < t' < t
/// Deterministic for a given seed.
std::vector<LemmaCheck> lemma_suite(std::span<const PentUpState> states, int sample_count,
                                    std::uint64_t seed = 1);

struct SweepOptions {
    double burn_in_fraction = 0.5;
    double tie_tol = kTolerance;
    double tol = 1e-9;
    unsigned threads = 0;  // 0: hardware concurrency
    bool validate = false;  // run validate() on each trajectory
};

struct SweepRow {
    double delta = 0.0;
    double p_map_hat = 0.0;
    int recurrence_gap = 0;
    bool collapsed = false;
    int monopolist_visits = 0;  // visits to p_mon after the burn-in
    int jumps = 0;  // rounds where the price rose
    double final_price = 0.0;
    int violations = 0;  // total validate() findings; 0 unless options.validate
};

/// One simulation per grid point; rows come back in grid order regardless of
/// the number of worker threads.
std::vector<SweepRow> delta_sweep(const DemandCurve& curve, double supply, std::span<const double> deltas,
                                  int steps, const SweepOptions& options = {});

/// `count` evenly spaced points from start to stop inclusive.
std::vector<double> delta_grid(double start, double stop, int count);

}  // namespace smlab
