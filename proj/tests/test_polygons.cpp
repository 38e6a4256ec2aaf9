#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psiq/polygons.hpp"

using namespace psiq;

namespace {

struct Config {
    long p;
    int f;
    long q;
    int m;  // truncate at q^m
    int N;
};

std::vector<Config> configs() {
    return {{2, 1, 2, 5, 32}, {3, 1, 3, 3, 27}, {2, 2, 4, 2, 16}, {5, 1, 5, 2, 25}};
}

}  // namespace

TEST_CASE("closed-form Newton polygon, small cases") {
    Polygon n2 = closed_form_newton(2, 3);
    REQUIRE(n2.vertices.size() == 4);
    CHECK(n2.vertices[0] == std::pair<mpq_class, mpq_class>(-8, 17));
    CHECK(n2.vertices[1] == std::pair<mpq_class, mpq_class>(-4, 5));
    CHECK(n2.vertices[2] == std::pair<mpq_class, mpq_class>(-2, 1));
    CHECK(n2.vertices[3] == std::pair<mpq_class, mpq_class>(-1, 0));
}

TEST_CASE("computed Newton polygon matches the closed form") {
    for (const Config& c : configs()) {
        PsiTable t = solve_psi(c.p, c.f, c.N);
        CHECK(newton_polygon(t) == closed_form_newton(c.q, c.m));
    }
}

TEST_CASE("computed valuation polygon matches the closed form") {
    for (const Config& c : configs()) {
        PsiTable t = solve_psi(c.p, c.f, c.N);
        CHECK(valuation_polygon(t) == closed_form_valuation(c.q, c.m));
    }
}

TEST_CASE("valuation polygon is the polar dual of the mirrored Newton polygon") {
    for (const Config& c : configs()) {
        PsiTable t = solve_psi(c.p, c.f, c.N);
        CHECK(valuation_polygon(t) == dual_polygon(negate_y(newton_polygon(t))));
    }
}

TEST_CASE("duality is an involution on interior vertices") {
    Polygon n = closed_form_newton(3, 4);
    Polygon dd = dual_polygon(dual_polygon(n));
    REQUIRE(dd.vertices.size() == n.vertices.size() - 2);
    for (size_t k = 0; k < dd.vertices.size(); ++k)
        CHECK(dd.vertices[k] == n.vertices[k + 1]);
}

TEST_CASE("Newton sides count q^n - q^{n-1} zeros at slope -n") {
    for (const Config& c : configs()) {
        PsiTable t = solve_psi(c.p, c.f, c.N);
        auto sides = polygon_sides(newton_polygon(t));
        REQUIRE(static_cast<int>(sides.size()) == c.m);
        // sides run left to right: slope -m first, slope -1 last
        for (int k = 0; k < c.m; ++k) {
            int n = c.m - k;
            mpz_class qn, qn1;
            mpz_ui_pow_ui(qn.get_mpz_t(), c.q, n);
            mpz_ui_pow_ui(qn1.get_mpz_t(), c.q, n - 1);
            CHECK(sides[k].slope == -n);
            CHECK(sides[k].width == qn - qn1);
        }
    }
}

TEST_CASE("valuation polygon values are the minima they claim") {
    PsiTable t = solve_psi(2, 1, 32);
    Polygon val = valuation_polygon(t);
    for (const auto& [mu, value] : val.vertices) {
        mpq_class best;
        bool first = true;
        for (int n = 1; n <= t.trunc_degree(); ++n) {
            if (t.coeff(n) == 0) continue;
            mpz_class r, two = 2;
            mpz_class c = t.coeff(n);
            long v = static_cast<long>(
                mpz_remove(r.get_mpz_t(), c.get_mpz_t(), two.get_mpz_t()));
            mpq_class cand = v + n * mu;
            if (first || cand < best) best = cand;
            first = false;
        }
        CHECK(best == value);
    }
}
