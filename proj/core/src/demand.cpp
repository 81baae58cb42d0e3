#include "smlab/demand.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "smlab/errors.hpp"

namespace smlab {

std::string family_name(const CurveFamilyTag& tag) {
    struct Visitor {
        std::string operator()(const LinearFamily&) const { return "linear"; }
        std::string operator()(const QEpsilonFamily&) const { return "q_epsilon"; }
        std::string operator()(const QZeroFamily&) const { return "q_zero"; }
        std::string operator()(const CustomFamily&) const { return "custom"; }
    };
    return std::visit(Visitor{}, tag);
}

DemandCurve DemandCurve::from_points(std::span<const std::pair<double, double>> points,
                                     CurveFamilyTag family) {
    std::vector<Knot> knots;
    knots.reserve(points.size());
    for (const auto& [price, quantity] : points) {
        knots.push_back({price, quantity, quantity});
    }
    return from_knots(std::move(knots), family);
}

DemandCurve DemandCurve::from_knots(std::vector<Knot> knots, CurveFamilyTag family) {
    if (knots.size() < 2) {
        throw InvalidArgument("demand curve needs at least two knots");
    }
    if (knots.front().price != 0.0) {
        throw InvalidArgument("first knot must be at price 0");
    }
    if (knots.front().quantity_above != knots.front().quantity) {
        throw InvalidArgument("a step at price 0 is not representable");
    }
    // Q vanishes beyond the last knot; any remaining mass is a final step.
    knots.back().quantity_above = 0.0;

    for (std::size_t i = 0; i < knots.size(); ++i) {
        const auto& k = knots[i];
        if (!std::isfinite(k.price) || !std::isfinite(k.quantity) || !std::isfinite(k.quantity_above)) {
            throw InvalidArgument("knot values must be finite");
        }
        if (k.quantity < 0.0 || k.quantity_above < 0.0) {
            throw InvalidArgument("quantities must be nonnegative");
        }
        if (k.quantity_above > k.quantity) {
            throw InvalidArgument("demand may only step down");
        }
        if (i > 0) {
            const auto& prev = knots[i - 1];
            if (!(k.price > prev.price)) {
                throw InvalidArgument("knot prices must increase strictly");
            }
            if (k.quantity > prev.quantity_above) {
                throw InvalidArgument("quantities must be weakly decreasing");
            }
        }
    }

    auto data = std::make_shared<Data>();
    data->family = family;
    data->strict = true;
    data->continuous = knots.back().quantity == 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const auto& a = knots[i];
        const auto& b = knots[i + 1];
        const double slope = (a.quantity_above - b.quantity) / (b.price - a.price);
        data->pieces.push_back({a.price, b.price, a.quantity_above + slope * a.price, slope});
        if (!(a.quantity_above > b.quantity)) {
            data->strict = false;
        }
        if (i > 0 && a.quantity_above != a.quantity) {
            data->continuous = false;
        }
    }
    data->knots = std::move(knots);
    return DemandCurve(std::move(data));
}

double DemandCurve::eval(double p) const {
    if (!(p >= 0.0)) {
        throw InvalidArgument("price must be nonnegative");
    }
    const auto& ks = data_->knots;
    if (p > ks.back().price) {
        return 0.0;
    }
    if (p == 0.0) {
        return ks.front().quantity;
    }
    auto it = std::lower_bound(ks.begin(), ks.end(), p,
                               [](const Knot& k, double x) { return k.price < x; });
    if (it->price == p) {
        return it->quantity;
    }
    const auto& right = *it;
    const auto& left = *(it - 1);
    const double w = (p - left.price) / (right.price - left.price);
    return left.quantity_above + (right.quantity - left.quantity_above) * w;
}

double DemandCurve::inverse_max_price(double q, double tol) const {
    const auto& ks = data_->knots;
    if (q > ks.front().quantity + tol) {
        throw NoSolution("quantity exceeds Q(0); no price attains it");
    }
    if (q <= 0.0) {
        return domain_max();
    }
    // Last knot whose value still reaches q.
    std::size_t j = 0;
    for (std::size_t i = ks.size(); i-- > 0;) {
        if (ks[i].quantity >= q - tol) {
            j = i;
            break;
        }
    }
    if (j + 1 == ks.size()) {
        return ks[j].price;
    }
    const auto& a = ks[j];
    const auto& b = ks[j + 1];
    if (a.quantity_above < q - tol) {
        return a.price;
    }
    if (a.quantity_above == b.quantity) {
        return b.price;
    }
    const double w = std::clamp((a.quantity_above - q) / (a.quantity_above - b.quantity), 0.0, 1.0);
    return a.price + w * (b.price - a.price);
}

DemandCurve make_linear(double c, double m) {
    if (!(c > 0.0) || !(m > 0.0)) {
        throw InvalidArgument("linear demand needs c > 0 and m > 0");
    }
    const std::pair<double, double> points[] = {{0.0, c}, {c / m, 0.0}};
    return DemandCurve::from_points(points, LinearFamily{c, m});
}

DemandCurve make_q_epsilon(double epsilon) {
    if (!(epsilon >= 0.0)) {
        throw InvalidArgument("q_epsilon needs epsilon >= 0");
    }
    const std::pair<double, double> points[] = {{0.0, 0.5 + epsilon}, {0.5, 0.5}, {1.0, 0.0}};
    if (epsilon == 0.0) {
        return DemandCurve::from_points(points, QZeroFamily{});
    }
    return DemandCurve::from_points(points, QEpsilonFamily{epsilon});
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, int line) {
    const std::string t = trim(field);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ParseError(line, "not a number: '" + t + "'");
    }
    if (used != t.size()) {
        throw ParseError(line, "trailing characters in '" + t + "'");
    }
    return v;
}

}  // namespace

DemandCurve parse_curve(std::istream& in) {
    std::vector<Knot> knots;
    std::vector<int> lines;
    std::string raw;
    int line = 0;
    bool seen_data = false;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        if (!seen_data && text == "price,quantity") {
            seen_data = true;
            continue;
        }
        seen_data = true;
        const auto comma = text.find(',');
        if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
            throw ParseError(line, "expected 'price,quantity'");
        }
        const double price = parse_number(text.substr(0, comma), line);
        const double quantity = parse_number(text.substr(comma + 1), line);
        if (price < 0.0 || quantity < 0.0) {
            throw ParseError(line, "price and quantity must be nonnegative");
        }
        if (!knots.empty() && price == knots.back().price) {
            if (quantity > knots.back().quantity_above) {
                throw ParseError(line, "a repeated price must step demand down");
            }
            if (knots.back().quantity_above != knots.back().quantity) {
                throw ParseError(line, "at most one step per price");
            }
            knots.back().quantity_above = quantity;
            continue;
        }
        if (!knots.empty()) {
            if (price < knots.back().price) {
                throw ParseError(line, "prices must be ascending");
            }
            if (quantity > knots.back().quantity_above) {
                throw ParseError(line, "quantities must be weakly decreasing");
            }
        } else if (price != 0.0) {
            throw ParseError(line, "the first point must be at price 0");
        }
        knots.push_back({price, quantity, quantity});
        lines.push_back(line);
    }
    if (knots.size() < 2) {
        throw ParseError(line, "need at least two points");
    }
    try {
        return DemandCurve::from_knots(std::move(knots));
    } catch (const InvalidArgument& e) {
        throw ParseError(lines.back(), e.what());
    }
}

DemandCurve load_curve(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot open demand file " + path.string());
    }
    return parse_curve(in);
}

}  // namespace smlab
