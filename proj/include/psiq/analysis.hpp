#pragma once

#include <optional>

#include "psiq/padic.hpp"
#include "psiq/psi.hpp"

namespace psiq {

/// Smallest M such that for all m > M the Newton-polygon lower bound on
/// v_p(b_m), minus n*m, is at least t. Finite because the effective slope
/// exceeds n beyond degree q^n.
long truncation_bound(long q, long n, long t);

/// Psi(x), certified modulo p^t. For v_p(x) >= 0 this is the truncated
/// series sum; for v_p(x) < 0 it applies the defining equation
///   Psi(x) = x - sum_{j >= 1} p^{-j} Psi(p^j x)^{q^j}
/// recursively, so the series itself is only ever summed at integral
/// arguments. Throws insufficient_series_truncation when the table is too
/// short and insufficient_precision when x is not known well enough.
PadicScalar eval_psi(const PsiTable& table, const PadicScalar& x, long t);

/// Psi'(x) modulo p^t by the termwise-differentiated series, with the
/// truncation degree supplied by the polygon bound at n = max(0, -v(x)).
PadicScalar eval_psi_derivative(const PsiTable& table, const PadicScalar& x, long t);

/// The digit a_i = Psi(p^{-i} a) mod p.
FqElem psi_digit(const PsiTable& table, const PadicScalar& a, long i);

/// Digits a_{v(a)}, ..., a_{v(a)+count-1} of a, each obtained through
/// psi_digit. Returns (v(a), digits).
std::pair<long, std::vector<FqElem>> witt_bivector_decompose(const PsiTable& table,
                                                             const PadicScalar& a,
                                                             int count);

/// The Psi-free digit sequence: a_0 = a and
///   a_i = sum_{j < i} p^{j-i} (a_j^{q^{i-j-1}} - a_j^{q^{i-j}}),
/// reduced mod p. Requires v_p(a) >= 0. Independent oracle for psi_digit.
std::vector<FqElem> a_sequence_oracle(const PadicScalar& a, int i_max);

/// Checks a == sum_{l=0}^{-v(a)+i} p^{-l} Psi(p^l a)^{q^l} mod p^{i+1}.
bool bivector_congruence_check(const PsiTable& table, const PadicScalar& a, long i);

/// A certified zero of Psi of valuation -n, one per unit residue disc.
struct ZeroRecord {
    long n;
    std::vector<FqElem> residue_digits;  // length n, leading digit nonzero
    PadicScalar zero;
    long residual_valuation;  // certified v_p(Psi(zero)) >= this
};

/// All q^n - q^{n-1} zeros of valuation -n, located by Newton iteration
/// from the disc centers and certified to residual valuation >= t.
/// The FieldContext must outlive the returned records.
std::vector<ZeroRecord> find_zeros(const PsiTable& table, const FieldContext& ctx,
                                   int n, long t);

/// Coefficients (constant first) of psi_n(x) = prod_i (1 - x/z_i) over the
/// level-n zeros. Constant term is exactly 1; all other coefficients have
/// valuation >= n.
std::vector<PadicScalar> schnirelmann_factor(const std::vector<ZeroRecord>& zeros,
                                             int n);

/// Residual valuations r_n = v_p(Psi(x+y) - phi_n(Psi(p^n x),...,Psi(x);
/// Psi(p^n y),...,Psi(y))) for n = 0..n_max, measured modulo p^K.
/// nullopt marks an exact zero (degenerate x or y). Requires f = 1 and
/// integral x, y.
std::vector<std::optional<long>> addition_law_check(const PsiTable& table,
                                                    const PadicScalar& x,
                                                    const PadicScalar& y, int n_max,
                                                    long K);

/// Samples x with bounded denominator and perturbations of valuation >= j,
/// j <= j_max, and checks v_p(Psi(x+d) - Psi(x)) >= j. Requires f = 1.
bool uniform_continuity_check(const PsiTable& table, const FieldContext& ctx,
                              int samples, int j_max, unsigned seed);

/// Checks v_p(Psi(p^i x)^{p^k} - [digit]) >= k+1 for k <= k_max, where
/// digit = Psi(p^i x) mod p. Requires v_p(p^i x) >= 0; throws zero_digit
/// when the limit is degenerate.
bool teichmuller_limit_check(const PsiTable& table, const PadicScalar& x, long i,
                             int k_max);

}  // namespace psiq
