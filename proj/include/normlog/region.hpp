#pragma once

#include <limits>
#include <memory>
#include <variant>
#include <vector>

#include "normlog/linalg.hpp"

namespace normlog {

enum class Membership { Outside, Inside, Ambiguous };

/// Finite description of a subset of the complex plane.
///
/// Membership is decided with two bands around every edge: a point within
/// `snap * max(1, |z|)` of an edge lies on it (inside iff the edge is
/// included); a point farther than that but within `boundary` of an excluded
/// edge is Ambiguous, and within `boundary` of an included edge is Inside.
class Region {
public:
    struct Rect {
        double re_lo, re_hi, im_lo, im_hi;
        bool re_lo_incl, re_hi_incl, im_lo_incl, im_hi_incl;
    };
    struct HLine {
        double c;  // the line Im z = c
    };
    struct Points {
        std::vector<Complex> points;
        double radius;
    };
    struct Union {
        std::vector<Region> parts;
    };
    struct Conjugate {
        std::shared_ptr<const Region> inner;
    };
    struct Negate {
        std::shared_ptr<const Region> inner;
    };
    struct Shift {
        std::shared_ptr<const Region> inner;
        Complex delta;
    };
    using Node = std::variant<Rect, HLine, Points, Union, Conjugate, Negate, Shift>;

    static constexpr double kInf = std::numeric_limits<double>::infinity();

    static Region rect(double re_lo, double re_hi, double im_lo, double im_hi,
                       bool re_lo_incl = true, bool re_hi_incl = true, bool im_lo_incl = true,
                       bool im_hi_incl = true);
    static Region hline(double c);
    static Region points(std::vector<Complex> pts, double radius);
    static Region union_of(std::vector<Region> parts);
    static Region conjugate(const Region& inner);
    static Region negate(const Region& inner);
    static Region shift(const Region& inner, Complex delta);

    static Region plane();
    static Region empty();
    /// R + i(lo, hi), both lines excluded.
    static Region open_band(double im_lo, double im_hi);
    /// The closed strip |Im z| <= pi.
    static Region strip();
    /// Its interior |Im z| < pi.
    static Region strip_interior();
    /// The two lines Im z = +-pi.
    static Region strip_boundary();

    Membership membership(Complex z, double boundary, double snap) const;
    const Node& node() const { return node_; }

private:
    explicit Region(Node node) : node_(std::move(node)) {}
    Node node_;
};

}  // namespace normlog
