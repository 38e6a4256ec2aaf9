#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psiq/fixtures.hpp"
#include "psiq/psi.hpp"

using namespace psiq;

namespace {

long vp(const mpz_class& x, long p) {
    REQUIRE(x != 0);
    mpz_class r, pz = p;
    return static_cast<long>(mpz_remove(r.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(solve_psi(6, 1, 10), error);
    CHECK_THROWS_AS(solve_psi(2, 5, 10), error);  // q = 32 > 16
    CHECK_THROWS_AS(solve_psi(17, 1, 10), error);
    CHECK_NOTHROW(solve_psi(2, 4, 8));
}

TEST_CASE("leading coefficients of Psi_2") {
    PsiTable t = solve_psi(2, 1, 6);
    CHECK(t.coeff(1) == 1);
    CHECK(t.coeff(2) == -2);
    CHECK(t.coeff(3) == 16);
    CHECK(t.coeff(4) == -352);
    CHECK(t.coeff(5) == 14336);
    CHECK(t.coeff(6) == -1060864);
}

TEST_CASE("Psi_2 coefficients match the reference table") {
    auto table = load_indexed_values(default_data_dir() + "/psi2_coefficients.txt");
    PsiTable t = solve_psi(2, 1, 24);
    for (auto& [n, value] : table) CHECK(t.coeff(n) == value);
}

TEST_CASE("coefficient valuations match the reference tables") {
    auto v2 = load_indexed_values(default_data_dir() + "/psi2_valuations.txt");
    PsiTable t2 = solve_psi(2, 1, 32);
    for (auto& [n, v] : v2) CHECK(vp(t2.coeff(n), 2) == v.get_si());

    auto v3 = load_indexed_values(default_data_dir() + "/psi3_valuations.txt");
    PsiTable t3 = solve_psi(3, 1, 81);
    CHECK(t3.coeff(1) == 1);
    for (auto& [n, v] : v3) CHECK(vp(t3.coeff(n), 3) == v.get_si());
}

TEST_CASE("sparse coefficients of Psi_5 and Psi_7") {
    auto t5ref = load_indexed_values(default_data_dir() + "/psi5_terms.txt");
    PsiTable t5 = solve_psi(5, 1, 17);
    for (auto& [n, value] : t5ref) CHECK(t5.coeff(n) == value);

    auto t7ref = load_indexed_values(default_data_dir() + "/psi7_terms.txt");
    PsiTable t7 = solve_psi(7, 1, 19);
    for (auto& [n, value] : t7ref) CHECK(t7.coeff(n) == value);
}

TEST_CASE("coefficient support is 1 mod (q-1)") {
    for (auto [p, f, N] : {std::tuple<long, int, int>{3, 1, 30},
                           {2, 2, 30},
                           {5, 1, 30},
                           {3, 2, 30},
                           {2, 3, 30}}) {
        PsiTable t = solve_psi(p, f, N);
        long d = t.q.get_si() - 1;
        CHECK(t.coeff(1) == 1);
        for (int n = 2; n <= N; ++n)
            if ((n - 1) % d != 0) CHECK(t.coeff(n) == 0);
    }
}

TEST_CASE("functional residual vanishes identically") {
    for (auto [p, f, N] : {std::tuple<long, int, int>{2, 1, 64},
                           {3, 1, 40},
                           {2, 2, 32},
                           {5, 1, 30},
                           {13, 1, 27},
                           {2, 4, 33}}) {
        PsiTable t = solve_psi(p, f, N);
        auto bad = functional_residual(t);
        CHECK_FALSE(bad.has_value());
    }
}

TEST_CASE("functional residual flags a corrupted table") {
    PsiTable t = solve_psi(2, 1, 12);
    t.series.at(7) += 1;
    auto bad = functional_residual(t);
    REQUIRE(bad.has_value());
    CHECK(*bad == 7);
}

TEST_CASE("u-series route agrees with the direct solver") {
    CHECK(check_candilera(2, 1, 64));
    CHECK(check_candilera(3, 1, 81));
    CHECK(check_candilera(2, 2, 32));
    CHECK(check_candilera(5, 1, 30));
}

TEST_CASE("u-series starts at 1") {
    ZSeries u = solve_u(2, 1, 8);
    CHECK(u[0] == 1);
    PsiTable t = solve_psi(2, 1, 9);
    for (int m = 0; m <= 8; ++m) CHECK(u[m] == t.coeff(m + 1));
}

TEST_CASE("compositional inverse") {
    for (auto [p, f, N] : {std::tuple<long, int, int>{2, 1, 16}, {3, 1, 16}}) {
        PsiTable t = solve_psi(p, f, N);
        ZSeries beta = inverse_series(t);
        ZSeries lhs = series_compose(t.series, beta, N);
        ZSeries rhs = series_compose(beta, t.series, N);
        ZSeries id = ZSeries::identity(N);
        CHECK(lhs == id);
        CHECK(rhs == id);
    }
}
