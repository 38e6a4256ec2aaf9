#include "psiq/polygons.hpp"

#include <algorithm>

namespace psiq {

namespace {

using Point = std::pair<mpq_class, mpq_class>;

mpq_class cross(const Point& o, const Point& a, const Point& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
}

/// Lower hull of points sorted by strictly increasing X; drops collinear
/// interior points.
std::vector<Point> lower_hull(const std::vector<Point>& pts) {
    std::vector<Point> hull;
    for (const Point& p : pts) {
        while (hull.size() >= 2 &&
               cross(hull[hull.size() - 2], hull.back(), p) <= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

long vp(const mpz_class& x, long p) {
    mpz_class r, pz = p;
    return static_cast<long>(mpz_remove(r.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

std::vector<Point> coefficient_points(const PsiTable& table, bool mirror) {
    std::vector<Point> pts;
    for (int n = 1; n <= table.trunc_degree(); ++n) {
        if (table.coeff(n) == 0) continue;
        long v = vp(table.coeff(n), table.p);
        pts.emplace_back(mirror ? -n : n, v);
    }
    if (pts.empty()) throw all_infinite();
    if (mirror) std::reverse(pts.begin(), pts.end());
    return pts;
}

mpz_class pow_z(long b, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b),
                  static_cast<unsigned long>(e));
    return r;
}

}  // namespace

Polygon newton_polygon(const PsiTable& table) {
    return Polygon{lower_hull(coefficient_points(table, true))};
}

Polygon closed_form_newton(long q, int imax) {
    Polygon poly;
    for (int i = imax; i >= 0; --i) {
        mpz_class qi = pow_z(q, i);
        mpz_class geo = (qi - 1) / (q - 1);
        poly.vertices.emplace_back(-qi, i * qi - geo);
    }
    return poly;
}

Polygon valuation_polygon(const PsiTable& table) {
    std::vector<Point> hull = lower_hull(coefficient_points(table, false));
    Polygon poly;
    // edge from (n0,v0) to (n1,v1) achieves the minimum jointly at the
    // breakpoint mu = -(v1-v0)/(n1-n0), with value v0 + n0*mu
    for (size_t k = hull.size() - 1; k >= 1; --k) {
        const Point& a = hull[k - 1];
        const Point& b = hull[k];
        mpq_class mu = -(b.second - a.second) / (b.first - a.first);
        mu.canonicalize();
        mpq_class value = a.second + a.first * mu;
        value.canonicalize();
        poly.vertices.emplace_back(mu, value);
    }
    return poly;
}

Polygon closed_form_valuation(long q, int jmax) {
    Polygon poly;
    for (int j = jmax; j >= 1; --j) {
        mpz_class geo = (pow_z(q, j) - 1) / (q - 1);
        poly.vertices.emplace_back(-j, -geo);
    }
    return poly;
}

Polygon negate_y(const Polygon& poly) {
    Polygon r = poly;
    for (auto& v : r.vertices) v.second = -v.second;
    return r;
}

Polygon dual_polygon(const Polygon& poly) {
    Polygon dual;
    for (size_t k = 0; k + 1 < poly.vertices.size(); ++k) {
        const Point& a = poly.vertices[k];
        const Point& b = poly.vertices[k + 1];
        mpq_class s = (b.second - a.second) / (b.first - a.first);
        s.canonicalize();
        mpq_class t = a.second - s * a.first;
        t.canonicalize();
        dual.vertices.emplace_back(-s, -t);
    }
    std::sort(dual.vertices.begin(), dual.vertices.end(),
              [](const Point& x, const Point& y) { return x.first < y.first; });
    return dual;
}

std::vector<Side> polygon_sides(const Polygon& poly) {
    std::vector<Side> sides;
    for (size_t k = 0; k + 1 < poly.vertices.size(); ++k) {
        const Point& a = poly.vertices[k];
        const Point& b = poly.vertices[k + 1];
        mpq_class s = (b.second - a.second) / (b.first - a.first);
        s.canonicalize();
        sides.push_back(Side{s, b.first - a.first});
    }
    return sides;
}

}  // namespace psiq
