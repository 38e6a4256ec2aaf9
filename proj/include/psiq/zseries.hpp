#pragma once

#include <gmpxx.h>

#include <vector>

#include "psiq/errors.hpp"

namespace psiq {

/// Truncated power series over Z: coefficients of T^0..T^trunc_degree,
/// the series is known modulo T^{trunc_degree+1}.
///
/// All values are immutable in practice (operations return new series) and
/// every mixed-truncation operation carries the minimum truncation degree.
class ZSeries {
public:
    explicit ZSeries(int trunc_degree)
        : coeffs_(static_cast<size_t>(trunc_degree) + 1) {}

    ZSeries(std::vector<mpz_class> coeffs)
        : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.emplace_back(0);
    }

    static ZSeries zero(int trunc_degree) { return ZSeries(trunc_degree); }

    static ZSeries constant(const mpz_class& c, int trunc_degree) {
        ZSeries s(trunc_degree);
        s.coeffs_[0] = c;
        return s;
    }

    /// c * T^degree truncated at trunc_degree (degree may exceed it).
    static ZSeries monomial(int degree, const mpz_class& c, int trunc_degree) {
        ZSeries s(trunc_degree);
        if (degree <= trunc_degree) s.coeffs_[degree] = c;
        return s;
    }

    static ZSeries identity(int trunc_degree) {
        return monomial(1, 1, trunc_degree);
    }

    int trunc_degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const mpz_class& operator[](int n) const { return coeffs_[n]; }
    mpz_class& at(int n) { return coeffs_[n]; }

    /// Order of vanishing; trunc_degree()+1 if zero modulo the truncation.
    int order() const {
        for (int n = 0; n <= trunc_degree(); ++n)
            if (coeffs_[n] != 0) return n;
        return trunc_degree() + 1;
    }

    bool is_zero() const { return order() > trunc_degree(); }

    ZSeries truncated(int new_degree) const {
        if (new_degree >= trunc_degree()) return *this;
        return ZSeries(std::vector<mpz_class>(coeffs_.begin(),
                                              coeffs_.begin() + new_degree + 1));
    }

    bool operator==(const ZSeries& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<mpz_class> coeffs_;
};

inline ZSeries series_add(const ZSeries& a, const ZSeries& b) {
    int d = std::min(a.trunc_degree(), b.trunc_degree());
    ZSeries r(d);
    for (int n = 0; n <= d; ++n) r.at(n) = a[n] + b[n];
    return r;
}

inline ZSeries series_sub(const ZSeries& a, const ZSeries& b) {
    int d = std::min(a.trunc_degree(), b.trunc_degree());
    ZSeries r(d);
    for (int n = 0; n <= d; ++n) r.at(n) = a[n] - b[n];
    return r;
}

inline ZSeries series_neg(const ZSeries& a) {
    ZSeries r(a.trunc_degree());
    for (int n = 0; n <= a.trunc_degree(); ++n) r.at(n) = -a[n];
    return r;
}

/// Product modulo T^{N+1}. The result truncation is capped by what the
/// operands actually determine: min(N, a.trunc + ord b, b.trunc + ord a).
ZSeries series_mul_trunc(const ZSeries& a, const ZSeries& b, int N);

/// a^e modulo T^{N+1} by binary exponentiation; a^0 = 1.
ZSeries series_pow_trunc(const ZSeries& a, unsigned long e, int N);

/// T -> c*T: coefficient n gets multiplied by c^n.
ZSeries substitute_scaled(const ZSeries& a, const mpz_class& c);

/// Coefficientwise exact quotient; throws non_divisible on remainder.
ZSeries exact_div_scalar(const ZSeries& a, const mpz_class& d);

/// a(b(T)) modulo T^{N+1}; requires ord(b) >= 1.
ZSeries series_compose(const ZSeries& a, const ZSeries& b, int N);

}  // namespace psiq
