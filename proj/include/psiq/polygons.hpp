#pragma once

#include "psiq/psi.hpp"

namespace psiq {

/// Convex polygon given by its vertex chain, X strictly increasing.
/// Collinear points are never vertices.
struct Polygon {
    std::vector<std::pair<mpq_class, mpq_class>> vertices;

    bool operator==(const Polygon&) const = default;
};

/// One side of a polygon: its slope and horizontal extent.
struct Side {
    mpq_class slope;
    mpq_class width;

    bool operator==(const Side&) const = default;
};

/// Lower convex hull of the points (-n, v_p(b_n)) over nonzero coefficients.
Polygon newton_polygon(const PsiTable& table);

/// Predicted polygon: vertices (-q^i, i q^i - (q^i - 1)/(q - 1)), i = imax..0.
Polygon closed_form_newton(long q, int imax);

/// Graph of mu -> min_n (v_p(b_n) + n mu) restricted to its breakpoints,
/// computed from the lower hull of (n, v_p(b_n)).
Polygon valuation_polygon(const PsiTable& table);

/// Predicted breakpoints: (-j, -(q^j - 1)/(q - 1)), j = jmax..1.
Polygon closed_form_valuation(long q, int jmax);

Polygon negate_y(const Polygon& poly);

/// Polarity with respect to the parabola: the vertex (-i, c) corresponds to
/// the line Y = iX - c, and the side Y = s X + t to the vertex (-s, -t).
/// A polygon with m vertices dualizes to one with m - 1.
Polygon dual_polygon(const Polygon& poly);

/// Slopes and widths of the sides, left to right. For the Newton polygon of
/// Psi_q the side of slope -n has width q^n - q^{n-1}, the number of zeros
/// of valuation -n.
std::vector<Side> polygon_sides(const Polygon& poly);

}  // namespace psiq
