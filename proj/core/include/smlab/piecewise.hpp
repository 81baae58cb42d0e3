#pragma once

#include <span>
#include <vector>

namespace smlab {

/// One affine piece of a weakly decreasing demand function,
/// d(p) = intercept - slope * p on the half-open interval (lo, hi].
///
/// Pieces are left-continuous: the value at `hi` belongs to this piece, the
/// value at `lo` to the piece on the left. The first piece of a function also
/// owns p = lo = 0.
struct LinearPiece {
    double lo = 0.0;
    double hi = 0.0;
    double intercept = 0.0;
    double slope = 0.0;

    double at(double p) const noexcept { return intercept - slope * p; }
};

struct RevenueMaximum {
    double price = 0.0;
    double demand = 0.0;   // d(price), uncapped
    double revenue = 0.0;  // price * min(supply, demand)
};

/// Evaluates a piece list at p using the left-continuous convention.
/// Returns 0 beyond the last piece.
double evaluate_pieces(std::span<const LinearPiece> pieces, double p);

/// Global maximizer of p * min(supply, d(p)) over a sorted, gap-free piece list.
///
/// Candidates per piece are its right end, the unconstrained vertex
/// intercept / (2 slope) and the capacity crossing d(p) = supply, whenever
/// those fall strictly inside the piece. Among candidates whose revenue is
/// within `tie_tol` of the best, the largest price wins.
RevenueMaximum maximize_revenue(std::span<const LinearPiece> pieces, double supply, double tie_tol);

}  // namespace smlab
