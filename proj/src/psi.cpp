#include "psiq/psi.hpp"

namespace psiq {

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

mpz_class check_params(long p, int f) {
    if (!is_prime(p)) throw error("p = " + std::to_string(p) + " is not prime");
    if (f < 1) throw error("f must be >= 1");
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(f));
    if (q > kMaxQ) throw error("q = p^f exceeds the supported bound " +
                               std::to_string(kMaxQ));
    return q;
}

ZSeries scalar_mul(const ZSeries& a, const mpz_class& c) {
    ZSeries r(a.trunc_degree());
    for (int n = 0; n <= a.trunc_degree(); ++n) r.at(n) = a[n] * c;
    return r;
}

mpz_class pow_z(long b, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b),
                  static_cast<unsigned long>(e));
    return r;
}

}  // namespace

PsiTable solve_psi(long p, int f, int N) {
    mpz_class q = check_params(p, f);
    if (N < 1) throw error("truncation degree must be >= 1");
    long ql = q.get_si();

    ZSeries phi = ZSeries::identity(N);
    // each application shrinks the tail, error degree r -> r(q-1)+q
    for (int iter = 0; iter <= N + 2; ++iter) {
        ZSeries next = ZSeries::identity(N);
        long qj = ql;
        for (long j = 1; qj <= N; ++j, qj *= ql) {
            mpz_class pj = pow_z(p, j);
            ZSeries t = series_pow_trunc(substitute_scaled(phi, pj),
                                         static_cast<unsigned long>(qj), N);
            next = series_sub(next, exact_div_scalar(t, pj));
        }
        if (next == phi) return PsiTable{p, f, q, phi};
        phi = std::move(next);
    }
    throw no_convergence(N + 3);
}

ZSeries solve_u(long p, int f, int R) {
    mpz_class q = check_params(p, f);
    if (R < 0) throw error("truncation degree must be >= 0");
    long ql = q.get_si();

    ZSeries phi = ZSeries::constant(1, R);
    for (int iter = 0; iter <= R + 2; ++iter) {
        ZSeries next = ZSeries::constant(1, R);
        long qj = ql;
        for (long j = 1; (qj - 1) / (ql - 1) <= R; ++j, qj *= ql) {
            long e = (qj - 1) / (ql - 1);
            ZSeries t = series_pow_trunc(substitute_scaled(phi, pow_z(p, j * (ql - 1))),
                                         static_cast<unsigned long>(qj), R);
            t = series_mul_trunc(t, ZSeries::monomial(static_cast<int>(e),
                                                      pow_z(p, j * (qj - 1)), R),
                                 R);
            next = series_sub(next, t);
        }
        if (next == phi) return phi;
        phi = std::move(next);
    }
    throw no_convergence(R + 3);
}

std::optional<int> functional_residual(const PsiTable& table) {
    int N = table.trunc_degree();
    long p = table.p;
    long ql = table.q.get_si();
    long J = 0;
    for (long qj = ql; qj <= N; qj *= ql) ++J;

    // p^J * (sum_j p^{-j} Psi(p^j T)^{q^j} - T), exact over Z
    ZSeries residual = ZSeries::monomial(1, -pow_z(p, J), N);
    long qj = 1;
    for (long j = 0; j <= J; ++j, qj *= ql) {
        ZSeries t = series_pow_trunc(substitute_scaled(table.series, pow_z(p, j)),
                                     static_cast<unsigned long>(qj), N);
        residual = series_add(residual, scalar_mul(t, pow_z(p, J - j)));
    }
    for (int n = 1; n <= N; ++n)
        if (residual[n] != 0) return n;
    return std::nullopt;
}

bool check_candilera(long p, int f, int N) {
    PsiTable table = solve_psi(p, f, N);
    long d = table.q.get_si() - 1;
    ZSeries u = solve_u(p, f, (N - 1) / static_cast<int>(d));
    for (int n = 1; n <= N; ++n) {
        if ((n - 1) % d == 0) {
            if (table.coeff(n) != u[(n - 1) / static_cast<int>(d)]) return false;
        } else {
            if (table.coeff(n) != 0) return false;
        }
    }
    return true;
}

ZSeries inverse_series(const PsiTable& table) {
    int N = table.trunc_degree();
    ZSeries beta = ZSeries::identity(N);
    // Psi(beta)[n] = beta[n] + (terms in beta[2..n-1]), so each coefficient
    // is fixed by cancelling the residual at its own degree.
    for (int n = 2; n <= N; ++n) {
        ZSeries r = series_compose(table.series, beta, N);
        beta.at(n) = -r[n];
    }
    return beta;
}

}  // namespace psiq
