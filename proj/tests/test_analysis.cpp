#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "psiq/analysis.hpp"

using namespace psiq;

namespace {

PadicScalar random_unit(const FieldContext& ctx, long N, std::mt19937& rng) {
    std::vector<mpz_class> coords(ctx.f());
    for (int i = 0; i < ctx.f(); ++i) {
        mpz_class c = 0;
        for (long b = 0; b < N; ++b) c = c * ctx.p() + static_cast<long>(rng() % ctx.p());
        coords[i] = c;
    }
    coords[0] = coords[0] * ctx.p() + 1 + static_cast<long>(rng() % (ctx.p() - 1));
    return PadicScalar::from_coords(ctx, std::move(coords), 0, N);
}

}  // namespace

TEST_CASE("truncation bound values") {
    CHECK(truncation_bound(2, 0, 1) == 1);
    CHECK(truncation_bound(2, 0, 10) == 5);
    CHECK(truncation_bound(2, 0, 30) == 11);
    CHECK(truncation_bound(2, 1, 10) == 8);
    CHECK(truncation_bound(3, 0, 10) == 6);
    CHECK(truncation_bound(2, 11, 12) == 4101);
    // monotone in t and in n
    for (long t = 1; t < 20; ++t)
        CHECK(truncation_bound(2, 0, t) <= truncation_bound(2, 0, t + 1));
    for (long n = 0; n < 4; ++n)
        CHECK(truncation_bound(3, n, 15) <= truncation_bound(3, n + 1, 15));
}

TEST_CASE("series evaluation on the unit disc") {
    FieldContext C2(2, 1);
    PsiTable T2 = solve_psi(2, 1, 64);

    CHECK(eval_psi(T2, PadicScalar::exact_zero(C2), 10).is_exact_zero());

    // independent partial sum of the series at x = 2
    PadicScalar x = PadicScalar::from_integer(C2, 2, 30);
    PadicScalar r = eval_psi(T2, x, 12);
    mpz_class acc = 0, pw = 1, mod = mpz_class(1) << 12;
    for (int m = 1; m <= 11; ++m) {
        pw *= 2;
        acc += T2.coeff(m) * pw;
    }
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
    CHECK(r.integral_coords(12)[0] == acc);

    // Psi is x + O(x^2), so Psi(a) == a mod p on units
    std::mt19937 rng(2024);
    for (int s = 0; s < 25; ++s) {
        PadicScalar u = random_unit(C2, 20, rng);
        CHECK(eval_psi(T2, u, 1).residue() == u.residue());
    }

    CHECK_THROWS_AS(eval_psi(T2, PadicScalar::from_integer(C2, 3, 2), 10),
                    insufficient_precision);
    PsiTable Tshort = solve_psi(2, 1, 3);
    CHECK_THROWS_AS(eval_psi(Tshort, PadicScalar::from_integer(C2, 3, 30), 20),
                    insufficient_series_truncation);

    FieldContext C3(3, 1);
    CHECK_THROWS_AS(eval_psi(T2, PadicScalar::from_integer(C3, 1, 10), 5), error);
}

TEST_CASE("evaluation at negative valuation satisfies the defining equation") {
    // a == sum_{l>=0} p^{-l} Psi(p^l a)^{q^l} mod p^{i+1} exercises every
    // branch of the recursive evaluator at once
    FieldContext C2(2, 1);
    PsiTable T2 = solve_psi(2, 1, 64);
    std::mt19937 rng(7);
    for (int s = 0; s < 10; ++s) {
        PadicScalar a = random_unit(C2, 30, rng).shift(-(1 + static_cast<long>(rng() % 4)));
        for (long i = 0; i <= 3; ++i) CHECK(bivector_congruence_check(T2, a, i));
    }
    FieldContext C3(3, 1);
    PsiTable T3 = solve_psi(3, 1, 81);
    for (int s = 0; s < 10; ++s) {
        PadicScalar a = random_unit(C3, 30, rng).shift(-(1 + static_cast<long>(rng() % 3)));
        for (long i = 0; i <= 3; ++i) CHECK(bivector_congruence_check(T3, a, i));
    }
    // integral and high-valuation arguments
    CHECK(bivector_congruence_check(T2, PadicScalar::from_rational(C2, 7, 3, 30), 3));
    CHECK(bivector_congruence_check(T2, PadicScalar::from_integer(C2, 32, 30), 3));
    CHECK(bivector_congruence_check(T2, PadicScalar::exact_zero(C2), 3));
}

TEST_CASE("derivative matches difference quotients") {
    FieldContext C2(2, 1);
    PsiTable T2 = solve_psi(2, 1, 64);
    std::mt19937 rng(31);
    for (int s = 0; s < 8; ++s) {
        PadicScalar x = random_unit(C2, 40, rng).shift(-(static_cast<long>(rng() % 3)));
        PadicScalar h = PadicScalar::from_integer(C2, 1, 40).shift(12);
        PadicScalar dq = eval_psi(T2, x.add(h), 24).sub(eval_psi(T2, x, 24)).mul(h.inv());
        PadicScalar d = eval_psi_derivative(T2, x, 12);
        // second-order error h * Psi''/2 costs one digit at p = 2
        CHECK(dq.sub(d).valuation_lower_bound() >= 8);
    }
    // Psi'(0) = 1
    PadicScalar d0 = eval_psi_derivative(T2, PadicScalar::exact_zero(C2), 10);
    CHECK(d0.sub(PadicScalar::from_integer(C2, 1, 10)).valuation_lower_bound() >= 10);
}

TEST_CASE("digit oracle agreement") {
    std::mt19937 rng(20240820);
    struct Grid { long p; int f; };
    for (Grid g : {Grid{2, 1}, Grid{3, 1}, Grid{2, 2}}) {
        FieldContext C(g.p, g.f);
        PsiTable T = solve_psi(g.p, g.f, 40);
        for (int s = 0; s < 20; ++s) {
            PadicScalar a = random_unit(C, 25, rng);
            auto oracle = a_sequence_oracle(a, 6);
            for (int i = 0; i <= 6; ++i) CHECK(psi_digit(T, a, i) == oracle[i]);
        }
    }
}

TEST_CASE("bivector decomposition equals Teichmuller expansion over Q_p") {
    std::mt19937 rng(555);
    for (long p : {2L, 3L}) {
        FieldContext C(p, 1);
        PsiTable T = solve_psi(p, 1, p == 2 ? 64 : 81);
        for (int s = 0; s < 15; ++s) {
            long v = static_cast<long>(rng() % 7) - 3;
            PadicScalar a = random_unit(C, 30, rng).shift(v);
            auto [v1, d1] = witt_bivector_decompose(T, a, 12);
            auto [v2, d2] = digit_expansion(a, 12);
            CHECK(v1 == v2);
            CHECK(d1 == d2);
        }
    }
}

TEST_CASE("zeros by valuation") {
    FieldContext C2(2, 1);
    PsiTable T2 = solve_psi(2, 1, 64);
    long counts2[] = {1, 2, 4};
    for (int n = 1; n <= 3; ++n) {
        auto zs = find_zeros(T2, C2, n, 20);
        CHECK(static_cast<long>(zs.size()) == counts2[n - 1]);
        for (const ZeroRecord& z : zs) {
            CHECK(z.zero.valuation() == -n);
            CHECK(z.residual_valuation >= 20);
            CHECK_FALSE(z.residue_digits[0].is_zero());
        }
    }
    FieldContext C3(3, 1);
    PsiTable T3 = solve_psi(3, 1, 81);
    long counts3[] = {2, 6};
    for (int n = 1; n <= 2; ++n) {
        auto zs = find_zeros(T3, C3, n, 20);
        CHECK(static_cast<long>(zs.size()) == counts3[n - 1]);
        for (const ZeroRecord& z : zs) CHECK(z.zero.valuation() == -n);
    }
}

TEST_CASE("factor over level-n zeros and partial products") {
    for (long p : {2L, 3L}) {
        FieldContext C(p, 1);
        PsiTable T = solve_psi(p, 1, 70);
        int kmax = p == 2 ? 3 : 2;
        std::vector<PadicScalar> poly{PadicScalar::exact_zero(C),
                                      PadicScalar::from_integer(C, 1, 70)};
        long qk = 1;
        for (int k = 1; k <= kmax; ++k) {
            auto zs = find_zeros(T, C, k, 30);
            auto sf = schnirelmann_factor(zs, k);
            CHECK(sf.front().residue() == C.fq_from_int(1));
            for (size_t j = 1; j < sf.size(); ++j)
                CHECK(sf[j].valuation_lower_bound() >= k);

            std::vector<PadicScalar> next(poly.size() + sf.size() - 1,
                                          PadicScalar::exact_zero(C));
            for (size_t i = 0; i < poly.size(); ++i)
                for (size_t j = 0; j < sf.size(); ++j)
                    next[i + j] = next[i + j].add(poly[i].mul(sf[j]));
            poly = std::move(next);

            qk *= p;
            for (long m = 1; m <= qk && m < static_cast<long>(poly.size()); ++m) {
                PadicScalar diff =
                    poly[m].sub(PadicScalar::from_integer(C, T.coeff(m), 30));
                CHECK(diff.valuation_lower_bound() >= k + 1);
            }
        }
    }

    FieldContext C2(2, 1);
    PsiTable T2 = solve_psi(2, 1, 64);
    auto zs = find_zeros(T2, C2, 2, 20);
    CHECK_THROWS_AS(schnirelmann_factor(zs, 1), count_mismatch);
    zs.pop_back();
    CHECK_THROWS_AS(schnirelmann_factor(zs, 2), count_mismatch);
}

TEST_CASE("addition law residuals") {
    std::mt19937 rng(424242);
    for (long p : {2L, 3L}) {
        FieldContext C(p, 1);
        PsiTable T = solve_psi(p, 1, p == 2 ? 64 : 81);
        for (int s = 0; s < 4; ++s) {
            PadicScalar x = random_unit(C, 50, rng);
            PadicScalar y = random_unit(C, 50, rng).shift(static_cast<long>(rng() % 2));
            auto res = addition_law_check(T, x, y, 5, 40);
            REQUIRE(res.size() == 6);
            for (int n = 1; n <= 5; ++n) {
                REQUIRE(res[n].has_value());
                CHECK(*res[n] >= *res[n - 1]);
            }
            CHECK(*res[4] > 10);
        }
        auto zero = addition_law_check(T, random_unit(C, 50, rng),
                                       PadicScalar::exact_zero(C), 3, 40);
        for (const auto& r : zero) CHECK_FALSE(r.has_value());
    }
}

TEST_CASE("uniform continuity") {
    FieldContext C2(2, 1);
    CHECK(uniform_continuity_check(solve_psi(2, 1, 64), C2, 50, 6, 17u));
    FieldContext C3(3, 1);
    CHECK(uniform_continuity_check(solve_psi(3, 1, 81), C3, 50, 6, 17u));
}

TEST_CASE("Teichmuller limit of iterated p-th powers") {
    std::mt19937 rng(909);
    for (long p : {2L, 3L}) {
        FieldContext C(p, 1);
        PsiTable T = solve_psi(p, 1, p == 2 ? 64 : 81);
        for (int s = 0; s < 5; ++s) {
            PadicScalar x = random_unit(C, 30, rng);
            CHECK(teichmuller_limit_check(T, x, 0, 8));
        }
        // Psi(p * unit) == 0 mod p: the limit degenerates
        PadicScalar y = random_unit(C, 30, rng).shift(1);
        CHECK_THROWS_AS(teichmuller_limit_check(T, y, 0, 4), zero_digit);
    }
}
