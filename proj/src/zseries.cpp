#include "psiq/zseries.hpp"

#include <algorithm>

namespace psiq {

ZSeries series_mul_trunc(const ZSeries& a, const ZSeries& b, int N) {
    int orda = a.order();
    int ordb = b.order();
    long cap = std::min<long>(N, std::min<long>(a.trunc_degree() + (long)ordb,
                                                b.trunc_degree() + (long)orda));
    if (cap < 0) cap = 0;
    int d = static_cast<int>(cap);
    ZSeries r(d);
    mpz_class t;
    for (int i = orda; i <= a.trunc_degree() && i <= d; ++i) {
        if (a[i] == 0) continue;
        int jmax = std::min(b.trunc_degree(), d - i);
        for (int j = ordb; j <= jmax; ++j) {
            if (b[j] == 0) continue;
            t = a[i] * b[j];
            r.at(i + j) += t;
        }
    }
    return r;
}

ZSeries series_pow_trunc(const ZSeries& a, unsigned long e, int N) {
    if (e == 0) return ZSeries::constant(1, N);
    ZSeries result = ZSeries::constant(1, N);
    ZSeries base = a;
    bool started = false;
    while (e > 0) {
        if (e & 1UL) {
            result = started ? series_mul_trunc(result, base, N) : base;
            started = true;
        }
        e >>= 1;
        if (e > 0) base = series_mul_trunc(base, base, N);
    }
    return result;
}

ZSeries substitute_scaled(const ZSeries& a, const mpz_class& c) {
    ZSeries r(a.trunc_degree());
    mpz_class cn = 1;
    for (int n = 0; n <= a.trunc_degree(); ++n) {
        r.at(n) = a[n] * cn;
        cn *= c;
    }
    return r;
}

ZSeries exact_div_scalar(const ZSeries& a, const mpz_class& d) {
    ZSeries r(a.trunc_degree());
    mpz_class q, rem;
    for (int n = 0; n <= a.trunc_degree(); ++n) {
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a[n].get_mpz_t(), d.get_mpz_t());
        if (rem != 0) throw non_divisible(n);
        r.at(n) = q;
    }
    return r;
}

ZSeries series_compose(const ZSeries& a, const ZSeries& b, int N) {
    // Horner; ord(b) >= 1 keeps truncation at N throughout.
    ZSeries r = ZSeries::constant(a[a.trunc_degree()], N);
    for (int k = a.trunc_degree() - 1; k >= 0; --k) {
        r = series_mul_trunc(r, b, N);
        ZSeries widened(N);
        for (int n = 0; n <= r.trunc_degree() && n <= N; ++n) widened.at(n) = r[n];
        widened.at(0) += a[k];
        r = widened;
    }
    return r;
}

}  // namespace psiq
