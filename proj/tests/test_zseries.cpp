#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "psiq/zseries.hpp"

using namespace psiq;

TEST_CASE("construction and accessors") {
    ZSeries s = ZSeries::identity(5);
    CHECK(s.trunc_degree() == 5);
    CHECK(s[1] == 1);
    CHECK(s.order() == 1);
    CHECK_FALSE(s.is_zero());
    CHECK(ZSeries::zero(3).is_zero());
    CHECK(ZSeries::zero(3).order() == 4);
    CHECK(ZSeries::monomial(7, 2, 5).is_zero());
}

TEST_CASE("add/sub take the minimum truncation") {
    ZSeries a = ZSeries::constant(3, 6);
    ZSeries b = ZSeries::identity(4);
    ZSeries s = series_add(a, b);
    CHECK(s.trunc_degree() == 4);
    CHECK(s[0] == 3);
    CHECK(s[1] == 1);
    CHECK(series_sub(s, s).is_zero());
}

TEST_CASE("multiplication is a truncated convolution") {
    // (1 + T)^2 = 1 + 2T + T^2
    ZSeries one_plus_t({1, 1, 0});
    ZSeries sq = series_mul_trunc(one_plus_t, one_plus_t, 10);
    CHECK(sq[0] == 1);
    CHECK(sq[1] == 2);
    CHECK(sq[2] == 1);

    // order of a factor extends the reliable degree of the product
    ZSeries t = ZSeries::identity(3);
    ZSeries prod = series_mul_trunc(t, t, 10);
    CHECK(prod.trunc_degree() == 4);
    CHECK(prod[2] == 1);
}

TEST_CASE("binary powering") {
    ZSeries base({1, 1});  // 1 + T mod T^2
    ZSeries p5 = series_pow_trunc(base, 5, 1);
    CHECK(p5[0] == 1);
    CHECK(p5[1] == 5);
    ZSeries p0 = series_pow_trunc(ZSeries::identity(4), 0, 4);
    CHECK(p0[0] == 1);
    CHECK(p0.order() == 0);

    // (1 + T + T^2)^3 mod T^4 = 1 + 3T + 6T^2 + 7T^3
    ZSeries c = series_pow_trunc(ZSeries({1, 1, 1, 0}), 3, 3);
    CHECK(c[0] == 1);
    CHECK(c[1] == 3);
    CHECK(c[2] == 6);
    CHECK(c[3] == 7);
}

TEST_CASE("scaling the variable") {
    ZSeries s({1, 1, 1});
    ZSeries scaled = substitute_scaled(s, 2);
    CHECK(scaled[0] == 1);
    CHECK(scaled[1] == 2);
    CHECK(scaled[2] == 4);
}

TEST_CASE("exact scalar division") {
    ZSeries s({4, 8, -12});
    ZSeries q = exact_div_scalar(s, 4);
    CHECK(q[1] == 2);
    CHECK(q[2] == -3);
    CHECK_THROWS_AS(exact_div_scalar(ZSeries(std::vector<mpz_class>{1}), 2),
                    non_divisible);
}

TEST_CASE("composition") {
    // f = T + T^2, g = 2T: f(g) = 2T + 4T^2
    ZSeries f({0, 1, 1});
    ZSeries g = ZSeries::monomial(1, 2, 5);
    ZSeries fg = series_compose(f, g, 5);
    CHECK(fg[0] == 0);
    CHECK(fg[1] == 2);
    CHECK(fg[2] == 4);

    // composing with T is the identity on coefficients
    ZSeries id = ZSeries::identity(5);
    ZSeries h({3, -1, 0, 7});
    ZSeries hid = series_compose(h, id, 3);
    for (int n = 0; n <= 3; ++n) CHECK(hid[n] == h[n]);
}
