#pragma once

#include <optional>
#include <string>

#include "smlab/demand.hpp"
#include "smlab/quantities.hpp"

namespace smlab {

/// Key quantities of (curve, supply). p_mon uses the same per-piece maximizer
/// and tie rule as the engine.
KeyQuantities key_quantities(const DemandCurve& curve, double supply, double tie_tol = kTolerance);

/// Price with Q(p) = q_ser - (1 - delta) s; the upper bound on the minimum
/// admission price. Throws NotApplicable unless delta > delta_bar_ser.
double p_ser_delta(const DemandCurve& curve, double supply, double delta);

/// Closed form 1/4 + (1 - delta) / eps quoted for the q_epsilon family
/// (eps = 1/2 for Q = 1 - p). It disagrees with p_ser_delta by a factor of
/// two in the second term and is kept only for cross-reference.
std::optional<double> p_ser_delta_stated_form(const CurveFamilyTag& family, double delta);

/// 1 - (Q(p_ser) - Q(p_star)) / s. Throws InvalidArgument unless p_star > p_ser.
double delta_min(const DemandCurve& curve, double supply, double p_star);

/// F_t(p) = p (a_t Q(p) - (a_t - 1) q_mon) - p_mon q_mon. A negative value
/// rules out p_t = p.
double certificate(const DemandCurve& curve, const KeyQuantities& kq, double delta, int t, double p);
double certificate(const DemandCurve& curve, double supply, double delta, int t, double p);

struct ForbiddenInterval {
    double root = 0.0;   // F_t < 0 on [0, root)
    double p_mon = 0.0;
};

/// Smallest zero of F_t, found exactly per piece (F_t is quadratic on each
/// piece of Q). Empty when F_t stays negative up to p_mon, i.e. every price
/// below p_mon is ruled out at round t.
std::optional<ForbiddenInterval> forbidden_interval(const DemandCurve& curve, double supply, double delta,
                                                    int t);

enum class LowerBoundSource { Linear, QEpsilon, GeneralQ };

std::string to_string(LowerBoundSource source);

struct LowerBound {
    double value = 0.0;
    LowerBoundSource source = LowerBoundSource::GeneralQ;
};

/// Asymptotic lower bound on the minimum admission price from one source:
///   Linear    (1 - delta) / 2, rescaled by c / m;  needs s >= c / 2
///   QEpsilon  (1 - delta) / (4 eps);              needs eps >= 1/2, s >= 1/2
///   GeneralQ  rev_mon / (Q(0)/(1-delta) + q_mon - q_mon/(1-delta));
///             needs delta < 1 and Q(0) <= s + delta (q_mon - s)
/// Linear and QEpsilon also require the curve's family tag to match.
/// Throws NotApplicable naming the failed precondition.
LowerBound asymptotic_admission_lb(const DemandCurve& curve, double supply, double delta,
                                   LowerBoundSource source);

/// True iff eps < (1 - delta) / 2: F_t < 0 below p_mon for every t, so the
/// dynamic never leaves p_mon on Q_eps.
bool collapse_predicted(double epsilon, double delta);

struct TightnessThresholds {
    double lower = 0.0;  // below: stuck at p_mon
    double upper = 0.0;  // above: upper bound applies (delta_bar_ser at s = 1)
};

/// (1 - 2 eps, 1 - eps/2 + eps^2/(1 + eps)) for 0 < eps < 1/2.
TightnessThresholds tightness_thresholds(double epsilon);

/// A bound that may not apply; `reason` names the failed precondition.
template <class T>
struct Applicable {
    std::optional<T> value;
    std::string reason;

    bool has_value() const { return value.has_value(); }
};

struct BoundReport {
    KeyQuantities kq;
    double supply = 0.0;
    double delta = 0.0;
    std::string family;
    bool weakly_decreasing = false;
    /// Largest p with Q(p) = q_ser; the serial floor for curves with flat parts.
    std::optional<double> adjusted_p_bar_ser;
    Applicable<double> upper_bound;
    std::optional<double> upper_bound_stated_form;
    Applicable<LowerBound> asymptotic_lower;
    Applicable<bool> collapse_predicted;
    Applicable<TightnessThresholds> tightness;
};

BoundReport bound_report(const DemandCurve& curve, double supply, double delta);

}  // namespace smlab
