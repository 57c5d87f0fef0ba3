#include "normlog/region.hpp"

#include <algorithm>
#include <cmath>

namespace normlog {

Region Region::rect(double re_lo, double re_hi, double im_lo, double im_hi, bool re_lo_incl,
                    bool re_hi_incl, bool im_lo_incl, bool im_hi_incl) {
    return Region(Rect{re_lo, re_hi, im_lo, im_hi, re_lo_incl, re_hi_incl, im_lo_incl, im_hi_incl});
}

Region Region::hline(double c) { return Region(HLine{c}); }

Region Region::points(std::vector<Complex> pts, double radius) {
    return Region(Points{std::move(pts), radius});
}

Region Region::union_of(std::vector<Region> parts) { return Region(Union{std::move(parts)}); }

Region Region::conjugate(const Region& inner) {
    return Region(Conjugate{std::make_shared<const Region>(inner)});
}

Region Region::negate(const Region& inner) {
    return Region(Negate{std::make_shared<const Region>(inner)});
}

Region Region::shift(const Region& inner, Complex delta) {
    return Region(Shift{std::make_shared<const Region>(inner), delta});
}

Region Region::plane() { return rect(-kInf, kInf, -kInf, kInf); }

Region Region::empty() { return union_of({}); }

Region Region::open_band(double im_lo, double im_hi) {
    return rect(-kInf, kInf, im_lo, im_hi, true, true, false, false);
}

Region Region::strip() { return rect(-kInf, kInf, -kPi, kPi); }

Region Region::strip_interior() { return open_band(-kPi, kPi); }

Region Region::strip_boundary() { return union_of({hline(kPi), hline(-kPi)}); }

namespace {

Membership combine_all(Membership a, Membership b) {
    if (a == Membership::Outside || b == Membership::Outside) return Membership::Outside;
    if (a == Membership::Ambiguous || b == Membership::Ambiguous) return Membership::Ambiguous;
    return Membership::Inside;
}

// Side test for one edge; `signed_dist` is positive on the inner side.
Membership edge(double signed_dist, bool included, double boundary, double snap) {
    const double d = std::abs(signed_dist);
    if (d <= snap) return included ? Membership::Inside : Membership::Outside;
    if (d <= boundary) return included ? Membership::Inside : Membership::Ambiguous;
    return signed_dist > 0 ? Membership::Inside : Membership::Outside;
}

Membership interval(double x, double lo, double hi, bool lo_incl, bool hi_incl, double boundary,
                    double snap) {
    Membership m = Membership::Inside;
    if (std::isfinite(lo)) m = combine_all(m, edge(x - lo, lo_incl, boundary, snap));
    if (std::isfinite(hi)) m = combine_all(m, edge(hi - x, hi_incl, boundary, snap));
    return m;
}

}  // namespace

Membership Region::membership(Complex z, double boundary, double snap) const {
    const double snap_abs = snap * std::max(1.0, std::abs(z));
    return std::visit(
        [&](const auto& n) -> Membership {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Rect>) {
                return combine_all(
                    interval(z.real(), n.re_lo, n.re_hi, n.re_lo_incl, n.re_hi_incl, boundary,
                             snap_abs),
                    interval(z.imag(), n.im_lo, n.im_hi, n.im_lo_incl, n.im_hi_incl, boundary,
                             snap_abs));
            } else if constexpr (std::is_same_v<T, HLine>) {
                return std::abs(z.imag() - n.c) <= std::max(boundary, snap_abs)
                           ? Membership::Inside
                           : Membership::Outside;
            } else if constexpr (std::is_same_v<T, Points>) {
                for (const auto& p : n.points) {
                    if (std::abs(z - p) <= n.radius) return Membership::Inside;
                }
                return Membership::Outside;
            } else if constexpr (std::is_same_v<T, Union>) {
                Membership m = Membership::Outside;
                for (const auto& part : n.parts) {
                    const Membership pm = part.membership(z, boundary, snap);
                    if (pm == Membership::Inside) return Membership::Inside;
                    if (pm == Membership::Ambiguous) m = Membership::Ambiguous;
                }
                return m;
            } else if constexpr (std::is_same_v<T, Conjugate>) {
                return n.inner->membership(std::conj(z), boundary, snap);
            } else if constexpr (std::is_same_v<T, Negate>) {
                return n.inner->membership(-z, boundary, snap);
            } else {
                return n.inner->membership(z - n.delta, boundary, snap);
            }
        },
        node_);
}

}  // namespace normlog
