#include "smlab/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "smlab/engine.hpp"
#include "smlab/errors.hpp"

namespace smlab {

KeyQuantities key_quantities(const DemandCurve& curve, double supply, double tie_tol) {
    if (!(supply > 0.0)) {
        throw InvalidArgument("supply must be positive");
    }
    if (!(curve.at_zero() > 0.0)) {
        throw NoDemand("no demand: Q(0) = 0");
    }
    const auto best = maximize_revenue(curve.pieces(), supply, tie_tol);

    KeyQuantities kq;
    kq.p_mon = best.price;
    kq.q_mon = std::min(supply, curve(kq.p_mon));
    kq.rev_mon = kq.p_mon * kq.q_mon;
    kq.p_ser = kq.rev_mon / supply;
    kq.q_ser = curve(kq.p_ser);
    kq.p_bar_ser = kq.p_ser * supply / kq.q_ser;
    kq.q_bar_ser = curve(kq.p_bar_ser);
    kq.delta_bar_ser = 1.0 - (kq.q_ser - kq.q_bar_ser) / supply;
    return kq;
}

double p_ser_delta(const DemandCurve& curve, double supply, double delta) {
    const auto kq = key_quantities(curve, supply);
    if (!(delta > kq.delta_bar_ser)) {
        throw NotApplicable("delta <= delta_bar_ser");
    }
    if (delta > 1.0) {
        throw InvalidArgument("delta must lie in [0, 1]");
    }
    return curve.inverse_max_price(kq.q_ser - (1.0 - delta) * supply);
}

std::optional<double> p_ser_delta_stated_form(const CurveFamilyTag& family, double delta) {
    if (const auto* q = std::get_if<QEpsilonFamily>(&family)) {
        return 0.25 + (1.0 - delta) / q->epsilon;
    }
    if (const auto* l = std::get_if<LinearFamily>(&family); l && l->c == 1.0 && l->m == 1.0) {
        return 0.25 + 2.0 * (1.0 - delta);
    }
    return std::nullopt;
}

double delta_min(const DemandCurve& curve, double supply, double p_star) {
    const auto kq = key_quantities(curve, supply);
    if (!(p_star > kq.p_ser)) {
        throw InvalidArgument("delta_min needs p_star > p_ser");
    }
    return 1.0 - (kq.q_ser - curve(p_star)) / supply;
}

double certificate(const DemandCurve& curve, const KeyQuantities& kq, double delta, int t, double p) {
    const double a = accumulation_factor(delta, t);
    return p * (a * curve(p) - (a - 1.0) * kq.q_mon) - kq.rev_mon;
}

double certificate(const DemandCurve& curve, double supply, double delta, int t, double p) {
    return certificate(curve, key_quantities(curve, supply), delta, t, p);
}

std::optional<ForbiddenInterval> forbidden_interval(const DemandCurve& curve, double supply, double delta,
                                                    int t) {
    if (t < 1) {
        throw InvalidArgument("round must be at least 1");
    }
    const auto kq = key_quantities(curve, supply);
    const double a = accumulation_factor(delta, t);
    const double rev = kq.rev_mon;
    // Zeros closer than this to p_mon are p_mon's own zero.
    constexpr double kNearMon = 1e-9;

    for (const auto& piece : curve.pieces()) {
        if (piece.lo >= kq.p_mon) {
            break;
        }
        const double hi = std::min(piece.hi, kq.p_mon);
        // On this piece F(p) = -quad p^2 + lin p - rev.
        const double quad = a * piece.slope;
        const double lin = a * piece.intercept - (a - 1.0) * kq.q_mon;
        const double at_lo = piece.lo * (lin - quad * piece.lo) - rev;
        std::optional<double> root;
        if (at_lo >= 0.0) {
            root = piece.lo;
        } else if (quad == 0.0) {
            if (lin > 0.0 && rev / lin <= hi) {
                root = rev / lin;
            }
        } else {
            const double disc = lin * lin - 4.0 * quad * rev;
            if (disc >= 0.0 && lin > 0.0) {
                const double r = 2.0 * rev / (lin + std::sqrt(disc));
                if (r > piece.lo && r <= hi) {
                    root = r;
                }
            }
        }
        if (root) {
            if (*root >= kq.p_mon - kNearMon) {
                return std::nullopt;
            }
            return ForbiddenInterval{*root, kq.p_mon};
        }
    }
    return std::nullopt;
}

std::string to_string(LowerBoundSource source) {
    switch (source) {
        case LowerBoundSource::Linear:
            return "linear";
        case LowerBoundSource::QEpsilon:
            return "q_epsilon";
        case LowerBoundSource::GeneralQ:
            return "general_q";
    }
    return "unknown";
}

LowerBound asymptotic_admission_lb(const DemandCurve& curve, double supply, double delta,
                                   LowerBoundSource source) {
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw InvalidArgument("delta must lie in [0, 1]");
    }
    switch (source) {
        case LowerBoundSource::Linear: {
            const auto* l = std::get_if<LinearFamily>(&curve.family());
            if (l == nullptr) {
                throw NotApplicable("curve is not linear");
            }
            if (!(supply / l->c >= 0.5)) {
                throw NotApplicable("linear bound needs s >= c/2");
            }
            return {(1.0 - delta) / 2.0 * l->c / l->m, source};
        }
        case LowerBoundSource::QEpsilon: {
            const auto* q = std::get_if<QEpsilonFamily>(&curve.family());
            if (q == nullptr) {
                throw NotApplicable("curve is not in the q_epsilon family");
            }
            if (!(q->epsilon >= 0.5)) {
                throw NotApplicable("q_epsilon bound needs epsilon >= 1/2");
            }
            if (!(supply >= 0.5)) {
                throw NotApplicable("q_epsilon bound needs s >= 1/2");
            }
            return {(1.0 - delta) / (4.0 * q->epsilon), source};
        }
        case LowerBoundSource::GeneralQ: {
            if (!(delta < 1.0)) {
                throw NotApplicable("general bound needs delta < 1");
            }
            const auto kq = key_quantities(curve, supply);
            const double q0 = curve.at_zero();
            if (!(q0 <= supply + delta * (kq.q_mon - supply) + kTolerance)) {
                throw NotApplicable("general bound needs Q(0) <= s + delta (q_mon - s)");
            }
            const double denom = q0 / (1.0 - delta) + kq.q_mon - kq.q_mon / (1.0 - delta);
            return {kq.rev_mon / denom, source};
        }
    }
    throw InvalidArgument("unknown lower bound source");
}

bool collapse_predicted(double epsilon, double delta) {
    if (!(epsilon >= 0.0)) {
        throw InvalidArgument("epsilon must be nonnegative");
    }
    if (!(delta >= 0.0 && delta < 1.0)) {
        throw InvalidArgument("collapse prediction needs delta in [0, 1)");
    }
    return epsilon < (1.0 - delta) / 2.0;
}

TightnessThresholds tightness_thresholds(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw InvalidArgument("tightness thresholds need 0 < epsilon < 1/2");
    }
    return {1.0 - 2.0 * epsilon, 1.0 - epsilon / 2.0 + epsilon * epsilon / (1.0 + epsilon)};
}

namespace {

void append_reason(std::string& reasons, const std::string& r) {
    if (!reasons.empty()) {
        reasons += "; ";
    }
    reasons += r;
}

}  // namespace

BoundReport bound_report(const DemandCurve& curve, double supply, double delta) {
    BoundReport r;
    r.kq = key_quantities(curve, supply);
    r.supply = supply;
    r.delta = delta;
    r.family = family_name(curve.family());
    r.weakly_decreasing = !curve.strict();
    if (r.weakly_decreasing) {
        r.adjusted_p_bar_ser = curve.inverse_max_price(r.kq.q_ser);
    }

    if (delta > r.kq.delta_bar_ser) {
        r.upper_bound.value = p_ser_delta(curve, supply, delta);
        r.upper_bound_stated_form = p_ser_delta_stated_form(curve.family(), delta);
    } else {
        r.upper_bound.reason = "delta <= delta_bar_ser";
    }

    for (auto source : {LowerBoundSource::Linear, LowerBoundSource::QEpsilon, LowerBoundSource::GeneralQ}) {
        try {
            const auto lb = asymptotic_admission_lb(curve, supply, delta, source);
            if (!r.asymptotic_lower.value || lb.value > r.asymptotic_lower.value->value) {
                r.asymptotic_lower.value = lb;
            }
        } catch (const NotApplicable& e) {
            append_reason(r.asymptotic_lower.reason, e.what());
        }
    }
    if (r.asymptotic_lower.value) {
        r.asymptotic_lower.reason.clear();
    }

    const auto& family = curve.family();
    if (const auto* q = std::get_if<QEpsilonFamily>(&family)) {
        if (!(supply >= 0.5)) {
            r.collapse_predicted.reason = "collapse analysis needs s >= 1/2";
        } else if (!(delta < 1.0)) {
            r.collapse_predicted.reason = "collapse analysis needs delta < 1";
        } else {
            r.collapse_predicted.value = collapse_predicted(q->epsilon, delta);
        }
        if (supply != 1.0) {
            r.tightness.reason = "tightness thresholds assume s = 1";
        } else if (!(q->epsilon < 0.5)) {
            r.tightness.reason = "tightness thresholds need epsilon < 1/2";
        } else {
            r.tightness.value = tightness_thresholds(q->epsilon);
        }
    } else if (std::holds_alternative<QZeroFamily>(family)) {
        if (supply >= 0.5) {
            r.collapse_predicted.value = true;
        } else {
            r.collapse_predicted.reason = "collapse analysis needs s >= 1/2";
        }
        r.tightness.reason = "tightness thresholds need epsilon > 0";
    } else {
        r.collapse_predicted.reason = "curve is not in the q_epsilon family";
        r.tightness.reason = "curve is not in the q_epsilon family";
    }
    return r;
}

}  // namespace smlab
