#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <vector>

#include "psiq/errors.hpp"

namespace psiq {

/// Residue field element of F_q, q = p^f, in the monomial basis of the
/// context modulus: coords[i] is the coefficient of X^i, reduced mod p.
struct FqElem {
    std::vector<long> coords;

    bool is_zero() const {
        for (long c : coords)
            if (c != 0) return false;
        return true;
    }
    bool operator==(const FqElem&) const = default;
};

/// Unramified context Q_q / Q_p: a prime p, a degree f, and a monic integer
/// polynomial of degree f irreducible mod p. Z_q is modeled as
/// Z[X]/(modulus, p^N) in the monomial basis.
class FieldContext {
public:
    /// Builds the context with the lexicographically first irreducible
    /// monic modulus (X when f = 1).
    FieldContext(long p, int f);

    /// Explicit modulus: monic, degree f, irreducible mod p (checked).
    FieldContext(long p, int f, std::vector<mpz_class> modulus);

    long p() const { return p_; }
    int f() const { return f_; }
    const mpz_class& q() const { return q_; }
    const std::vector<mpz_class>& modulus() const { return modulus_; }

    /// p^e with e >= 0.
    mpz_class p_pow(long e) const;

    FqElem fq_zero() const { return FqElem{std::vector<long>(f_, 0)}; }
    FqElem fq_from_int(long v) const;
    FqElem fq_add(const FqElem& a, const FqElem& b) const;
    FqElem fq_sub(const FqElem& a, const FqElem& b) const;
    FqElem fq_mul(const FqElem& a, const FqElem& b) const;
    FqElem fq_pow(const FqElem& a, const mpz_class& e) const;

    /// Product in Z[X]/(modulus) with no coefficient reduction.
    std::vector<mpz_class> zx_mul(const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b) const;

    // Z_q arithmetic on coordinate vectors modulo (modulus, mod).
    std::vector<mpz_class> zq_mul(const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b,
                                  const mpz_class& mod) const;
    std::vector<mpz_class> zq_pow(const std::vector<mpz_class>& a, mpz_class e,
                                  const mpz_class& mod) const;
    /// Inverse of a unit (nonzero mod p) modulo (modulus, p^N).
    std::vector<mpz_class> zq_inv(const std::vector<mpz_class>& a, long N) const;

private:
    void validate() const;

    long p_;
    int f_;
    std::vector<mpz_class> modulus_;  // degree f_, monic; modulus_[f_] == 1
    mpz_class q_;
};

/// Element of Q_q at finite precision. Three states:
///  - exact zero;
///  - approximate zero: all that is known is x == 0 mod p^k (the outcome of
///    full cancellation -- subsequent digit-consuming operations throw
///    insufficient_precision);
///  - regular: x = p^v * u with u a unit of Z_q known mod p^N, so x is known
///    modulo p^{v+N}.
class PadicScalar {
public:
    static PadicScalar exact_zero(const FieldContext& ctx);
    static PadicScalar approx_zero(const FieldContext& ctx, long known_mod);

    /// num/den in Q_p c= Q_q to precision N; throws zero_denominator.
    static PadicScalar from_rational(const FieldContext& ctx, const mpz_class& num,
                                     const mpz_class& den, long N);
    static PadicScalar from_integer(const FieldContext& ctx, const mpz_class& n, long N);

    /// Normalizes raw coordinates: value = p^{base_val} * (coords mod p^{known}).
    static PadicScalar from_coords(const FieldContext& ctx, std::vector<mpz_class> coords,
                                   long base_val, long known_mod);

    static PadicScalar from_residue(const FieldContext& ctx, const FqElem& d, long N);

    const FieldContext& ctx() const { return *ctx_; }

    bool is_exact_zero() const { return state_ == State::ExactZero; }
    bool is_approx_zero() const { return state_ == State::ApproxZero; }
    bool is_zero() const { return state_ != State::Regular; }

    /// Exact valuation (regular elements only).
    long valuation() const;
    /// Largest e such that v_p(x) >= e is certified. LONG_MAX for exact zero.
    long valuation_lower_bound() const;
    bool is_valuation_exact() const { return state_ != State::ApproxZero; }

    /// Unit precision N (regular); for approx zero the known-mod exponent.
    long precision() const { return prec_; }
    /// Exponent k with x known modulo p^k.
    long known_mod() const;

    const std::vector<mpz_class>& unit_coords() const { return unit_; }

    PadicScalar neg() const;
    PadicScalar add(const PadicScalar& o) const;
    PadicScalar sub(const PadicScalar& o) const;
    PadicScalar mul(const PadicScalar& o) const;
    /// Multiplicative inverse; throws division_by_zero / insufficient_precision.
    PadicScalar inv() const;
    PadicScalar pow_ui(unsigned long e) const;
    /// Multiply by p^j (j may be negative).
    PadicScalar shift(long j) const;

    /// Reduction mod p; requires certified v_p >= 0.
    FqElem residue() const;

    /// The element as an integer of Z_q modulo p^K: unit * p^val reduced.
    /// Requires certified v_p >= 0 and known_mod() >= K.
    std::vector<mpz_class> integral_coords(long K) const;

    friend PadicScalar teichmuller_lift(const PadicScalar& a, long N);
    friend std::pair<long, std::vector<FqElem>> digit_expansion(const PadicScalar& a,
                                                                int count);

private:
    enum class State { ExactZero, ApproxZero, Regular };

    PadicScalar(const FieldContext& ctx, State s) : ctx_(&ctx), state_(s) {}

    const FieldContext* ctx_;
    State state_;
    long val_ = 0;   // regular: valuation; approx zero: known-mod exponent
    long prec_ = 0;  // regular: unit digits known; approx zero: == val_
    std::vector<mpz_class> unit_;
};

/// The unique tau with tau^q = tau and tau == a mod p, to precision N.
/// Requires v_p(a) = 0 (throws non_unit).
PadicScalar teichmuller_lift(const PadicScalar& a, long N);

/// Teichmuller digit expansion a = sum [d_i] p^i starting at i = first.
/// Returns (first, digits). Throws insufficient_precision if count exceeds
/// the digits determined by a's precision.
std::pair<long, std::vector<FqElem>> digit_expansion(const PadicScalar& a, int count);

}  // namespace psiq
