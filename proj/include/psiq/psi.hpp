#pragma once

#include <optional>

#include "psiq/zseries.hpp"

namespace psiq {

/// The series Psi_q for q = p^f: the unique element of T + T^2 Z[[T]] with
///
///   sum_{j >= 0} p^{-j} Psi(p^j T)^{q^j} = T.
///
/// Coefficients are integers supported on degrees == 1 mod (q - 1).
struct PsiTable {
    long p;
    int f;
    mpz_class q;
    ZSeries series;  // trunc degree N, series[1] == 1

    const mpz_class& coeff(int n) const { return series[n]; }
    int trunc_degree() const { return series.trunc_degree(); }
};

inline constexpr long kMaxQ = 16;

/// Solves the defining equation modulo T^{N+1} by fixed-point iteration of
/// the contraction phi -> T - sum_{j>=1} p^{-j} phi(p^j T)^{q^j}.
/// Requires p prime, f >= 1, q = p^f <= kMaxQ.
PsiTable solve_psi(long p, int f, int N);

/// The auxiliary series u_q in 1 + T Z[[T]] with Psi_q(T) = T u_q(T^{q-1}),
/// computed modulo T^{R+1} as the fixed point of
/// phi -> 1 - sum_{j>=1} p^{j(q^j-1)} T^{(q^j-1)/(q-1)} phi(p^{j(q-1)} T)^{q^j}.
ZSeries solve_u(long p, int f, int R);

/// Substitutes the table back into its defining equation (exactly, after
/// clearing denominators). Returns the first degree in [1, N] where the
/// residual is nonzero, or nullopt when the equation holds on the nose.
std::optional<int> functional_residual(const PsiTable& table);

/// Checks coefficientwise that Psi_q(T) = T u_q(T^{q-1}) with an
/// independently computed u_q, including vanishing off the support.
bool check_candilera(long p, int f, int N);

/// Compositional inverse beta with Psi(beta(T)) == T mod T^{N+1};
/// integral because Psi is T + higher order.
ZSeries inverse_series(const PsiTable& table);

}  // namespace psiq
