#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "smlab/piecewise.hpp"

namespace smlab {

/// Absolute tolerance used for price/quantity comparisons unless overridden.
inline constexpr double kTolerance = 1e-12;

struct LinearFamily {
    double c = 1.0;  // Q(0)
    double m = 1.0;  // slope magnitude
};

struct QEpsilonFamily {
    double epsilon = 0.0;
};

struct QZeroFamily {};

struct CustomFamily {};

/// Which constructor produced a curve; bounds with closed forms key off this.
using CurveFamilyTag = std::variant<LinearFamily, QEpsilonFamily, QZeroFamily, CustomFamily>;

std::string family_name(const CurveFamilyTag& tag);

/// Breakpoint of a demand curve. `quantity` is the value at `price` (the
/// limit from below, i.e. transactions willing to pay `price` or more);
/// `quantity_above` is the limit from above. The two differ only at a step.
struct Knot {
    double price = 0.0;
    double quantity = 0.0;
    double quantity_above = 0.0;
};

/// Weakly decreasing piecewise-linear daily demand Q(p).
///
/// Immutable; copies share the knot storage. Q(p) = 0 beyond domain_max().
class DemandCurve {
public:
    /// Continuous curve through (price, quantity) pairs. Prices must start at
    /// 0 and increase strictly; quantities must be nonnegative and weakly
    /// decreasing. Throws InvalidArgument otherwise.
    static DemandCurve from_points(std::span<const std::pair<double, double>> points,
                                   CurveFamilyTag family = CustomFamily{});

    /// General form with explicit steps; see Knot.
    static DemandCurve from_knots(std::vector<Knot> knots, CurveFamilyTag family = CustomFamily{});

    double operator()(double p) const { return eval(p); }
    double eval(double p) const;

    /// Largest p with Q(p) >= q. Throws NoSolution for q > Q(0).
    /// For q <= 0 the supremum of the support, domain_max(), is returned.
    double inverse_max_price(double q, double tol = kTolerance) const;

    std::span<const Knot> knots() const { return data_->knots; }
    const std::vector<LinearPiece>& pieces() const { return data_->pieces; }
    double domain_max() const { return data_->knots.back().price; }
    double at_zero() const { return data_->knots.front().quantity; }

    /// Strictly decreasing on every piece.
    bool strict() const { return data_->strict; }
    /// No steps, and Q reaches 0 at domain_max().
    bool continuous() const { return data_->continuous; }
    const CurveFamilyTag& family() const { return data_->family; }

private:
    struct Data {
        std::vector<Knot> knots;
        std::vector<LinearPiece> pieces;
        bool strict = false;
        bool continuous = false;
        CurveFamilyTag family;
    };

    explicit DemandCurve(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;
};

/// Q(p) = c - m p on [0, c/m].
DemandCurve make_linear(double c, double m);

/// Q(p) = 1/2 + eps - 2 eps p on [0, 1/2], then 1 - p on [1/2, 1].
/// eps = 0 gives the flat-then-linear curve.
DemandCurve make_q_epsilon(double epsilon);

/// Reads "price,quantity" lines in ascending price order. Blank lines and
/// lines starting with '#' are skipped, as is a leading "price,quantity"
/// header. Repeating a price with a lower quantity declares a step at that
/// price. Errors carry the offending line number.
DemandCurve parse_curve(std::istream& in);
DemandCurve load_curve(const std::filesystem::path& path);

}  // namespace smlab
