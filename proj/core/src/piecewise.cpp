#include "smlab/piecewise.hpp"

#include <algorithm>
#include <limits>

namespace smlab {

double evaluate_pieces(std::span<const LinearPiece> pieces, double p) {
    if (pieces.empty() || p > pieces.back().hi) {
        return 0.0;
    }
    if (p <= pieces.front().lo) {
        return pieces.front().at(pieces.front().lo);
    }
    // First piece whose right end is >= p owns p.
    auto it = std::lower_bound(pieces.begin(), pieces.end(), p,
                               [](const LinearPiece& piece, double x) { return piece.hi < x; });
    return it->at(p);
}

RevenueMaximum maximize_revenue(std::span<const LinearPiece> pieces, double supply, double tie_tol) {
    std::vector<RevenueMaximum> candidates;
    candidates.reserve(pieces.size() * 3 + 1);

    auto consider = [&](const LinearPiece& piece, double p) {
        const double d = piece.at(p);
        candidates.push_back({p, d, p * std::min(supply, d)});
    };

    if (!pieces.empty()) {
        consider(pieces.front(), pieces.front().lo);
    }
    for (const auto& piece : pieces) {
        consider(piece, piece.hi);
        if (piece.slope > 0.0) {
            const double vertex = piece.intercept / (2.0 * piece.slope);
            if (vertex > piece.lo && vertex < piece.hi) {
                consider(piece, vertex);
            }
            const double crossing = (piece.intercept - supply) / piece.slope;
            if (crossing > piece.lo && crossing < piece.hi) {
                consider(piece, crossing);
            }
        }
    }

    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
        best = std::max(best, c.revenue);
    }
    RevenueMaximum chosen{0.0, 0.0, best};
    bool found = false;
    for (const auto& c : candidates) {
        if (c.revenue >= best - tie_tol && (!found || c.price > chosen.price)) {
            chosen = c;
            found = true;
        }
    }
    return chosen;
}

}  // namespace smlab
