#pragma once

namespace smlab {

/// Monopolist and serial quantities of a (curve, supply) pair.
///
///   p_mon         largest maximizer of p * min(s, Q(p)); q_mon = Q(p_mon)
///   p_ser         rev_mon / s;                            q_ser = Q(p_ser)
///   p_bar_ser     p_ser * s / q_ser;                      q_bar_ser = Q(p_bar_ser)
///   delta_bar_ser 1 - (q_ser - q_bar_ser) / s
struct KeyQuantities {
    double p_mon = 0.0;
    double q_mon = 0.0;
    double rev_mon = 0.0;
    double p_ser = 0.0;
    double q_ser = 0.0;
    double p_bar_ser = 0.0;
    double q_bar_ser = 0.0;
    double delta_bar_ser = 0.0;
};

}  // namespace smlab
