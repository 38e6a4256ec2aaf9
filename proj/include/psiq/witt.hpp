#pragma once

#include <map>
#include <memory>
#include <string>

#include "psiq/padic.hpp"

namespace psiq {

/// Monomial in the variables X_0..X_n, Y_0..Y_n; exponent vectors keep no
/// trailing zeros so equal monomials compare equal.
struct Monomial {
    std::vector<unsigned> ex, ey;

    auto operator<=>(const Monomial&) const = default;
};

/// Sparse integer polynomial in the X_i, Y_i. No zero coefficients stored.
class SymPoly {
public:
    SymPoly() = default;

    static SymPoly constant(const mpz_class& c);
    static SymPoly var_x(int i);
    static SymPoly var_y(int i);

    SymPoly add(const SymPoly& o) const;
    SymPoly sub(const SymPoly& o) const;
    SymPoly mul(const SymPoly& o) const;
    SymPoly pow_ui(unsigned long e) const;
    SymPoly scaled(const mpz_class& c) const;
    /// Coefficientwise exact quotient; throws non_integral otherwise.
    SymPoly exact_div(const mpz_class& d) const;

    /// Renames every variable index i to i + 1.
    SymPoly shifted_vars() const;

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, mpz_class>& terms() const { return terms_; }
    bool operator==(const SymPoly&) const = default;

    mpz_class eval_int(const std::vector<mpz_class>& xs,
                       const std::vector<mpz_class>& ys) const;

    /// Canonical text form: monomials in sorted order.
    std::string to_string() const;

private:
    void insert(Monomial m, mpz_class c);

    std::map<Monomial, mpz_class> terms_;
};

/// Witt addition polynomials phi_0..phi_n for the prime p, from the ghost
/// equations w_k(S) = w_k(X) + w_k(Y). Generated once per (p, n) and cached.
std::vector<SymPoly> phi_polynomials(long p, int n);

/// True iff every monomial of phi_i has weight exactly p^i, where X_i and
/// Y_i carry weight p^i.
bool isobaric_check(const std::vector<SymPoly>& phis, long p);

/// True iff phi_i - phi_{i-1}(shifted variables) lies in the ideal (X_0 Y_0)
/// for every i >= 1.
bool shift_congruence_check(const std::vector<SymPoly>& phis);

// ---------------------------------------------------------------------------

/// Coefficient ring of a Witt vector: F_q, Z/p^a, or Z itself. Elements are
/// coordinate vectors in the monomial basis of the F_q modulus (length 1
/// unless the ring is F_q with f > 1).
struct WittRing {
    enum class Kind { Fq, Zmod, Integers };

    Kind kind;
    long p;
    int f;  // Fq only
    int a;  // Zmod only: modulus p^a
    std::shared_ptr<const FieldContext> ctx;  // set when kind == Fq

    static WittRing fq(long p, int f);
    static WittRing zmod(long p, int a);
    static WittRing integers(long p);

    int coord_len() const { return kind == Kind::Fq ? f : 1; }
    std::vector<mpz_class> zero_elem() const;
    std::vector<mpz_class> from_int(long v) const;
    std::vector<mpz_class> reduce(std::vector<mpz_class> e) const;

    bool operator==(const WittRing& o) const {
        return kind == o.kind && p == o.p && f == o.f && a == o.a;
    }
};

struct WittVector {
    WittRing ring;
    std::vector<std::vector<mpz_class>> components;

    int length() const { return static_cast<int>(components.size()); }
    bool operator==(const WittVector& o) const {
        return ring == o.ring && components == o.components;
    }
};

WittVector witt_zero(const WittRing& ring, int length);

/// Witt sum via the ghost recursion on integral lifts, reduced back into
/// the ring componentwise.
WittVector witt_add(const WittVector& a, const WittVector& b);

/// V: prepends a zero, extending the length by one.
WittVector verschiebung(const WittVector& a);

/// F: raises components to the p-th power; only meaningful over F_q.
WittVector frobenius(const WittVector& a);

/// [t] = (t, 0, ..., 0) of the given length.
WittVector teichmuller_witt(const WittRing& ring, const std::vector<mpz_class>& t,
                            int length);

/// Ghost components w_0..w_n over Z (ring must be Integers).
std::vector<mpz_class> to_ghost(const WittVector& a);

/// Inverts the triangular ghost system; throws non_integral when the input
/// is not in the image.
WittVector from_ghost(const WittRing& ring, const std::vector<mpz_class>& ghost);

}  // namespace psiq
