#include "psiq/analysis.hpp"

#include <climits>
#include <map>
#include <random>

#include "psiq/witt.hpp"

namespace psiq {

namespace {

mpz_class pow_z(long b, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b),
                  static_cast<unsigned long>(e));
    return r;
}

unsigned long pow_ul(long b, long e) {
    unsigned long r = 1;
    for (long i = 0; i < e; ++i) r *= static_cast<unsigned long>(b);
    return r;
}

void check_context(const PsiTable& table, const PadicScalar& x) {
    if (table.p != x.ctx().p() || table.f != x.ctx().f())
        throw error("scalar context does not match the series parameters");
}

long geometric(long q, long n) {
    // (q^n - 1)/(q - 1)
    mpz_class g = (pow_z(q, n) - 1) / (q - 1);
    return g.get_si();
}

}  // namespace

long truncation_bound(long q, long n, long t) {
    mpz_class last_bad = 0;
    if (-n < t) last_bad = 1;
    // on (q^i, q^{i+1}]: bound(m) - n*m = s*m - E with s = i+1-n,
    // E = (q^{i+1}-1)/(q-1)
    mpz_class qi = 1;
    for (long i = 0;; ++i) {
        mpz_class qi1 = qi * q;
        mpz_class E = (qi1 - 1) / (q - 1);
        mpz_class s = i + 1 - n;
        if (s <= 0) {
            if (s * qi1 - E < t && qi1 > last_bad) last_bad = qi1;
        } else {
            // m is bad iff s*m - E < t, i.e. m <= floor((t + E - 1)/s)
            mpz_class mb;
            mpz_class num = t + E - 1;
            mpz_fdiv_q(mb.get_mpz_t(), num.get_mpz_t(), s.get_mpz_t());
            if (mb > qi) {
                mpz_class cand = std::min(mb, qi1);
                if (cand > last_bad) last_bad = cand;
            }
        }
        qi = qi1;
        // beyond here the per-segment minimum s*q^i - E >= (s-2)*q^i keeps
        // growing, so once it clears t nothing later can be bad
        if (s >= 3 && (s - 2) * qi >= t) break;
    }
    return last_bad.get_si();
}

namespace {

/// Truncated series sum at an integral argument, certified mod p^t.
PadicScalar eval_direct(const PsiTable& table, const PadicScalar& x, long t) {
    const FieldContext& ctx = x.ctx();
    if (x.known_mod() < t)
        throw insufficient_precision("series argument known mod p^" +
                                     std::to_string(x.known_mod()) + ", need p^" +
                                     std::to_string(t));
    long val = x.is_zero() ? t : x.valuation();
    long M = truncation_bound(table.q.get_si(), -val, t);
    if (M > table.trunc_degree()) throw insufficient_series_truncation(static_cast<int>(M));

    mpz_class mod = ctx.p_pow(t);
    std::vector<mpz_class> xc = x.integral_coords(t);
    std::vector<mpz_class> pw = xc;
    std::vector<mpz_class> acc(ctx.f());
    for (long m = 1; m <= M; ++m) {
        if (table.coeff(m) != 0)
            for (int i = 0; i < ctx.f(); ++i) acc[i] += table.coeff(m) * pw[i];
        if (m < M) pw = ctx.zq_mul(pw, xc, mod);
    }
    return PadicScalar::from_coords(ctx, std::move(acc), 0, t);
}

/// Memoized evaluation chain for arguments of negative valuation, via
/// Psi(x) = x - sum_{j>=1} p^{-j} Psi(p^j x)^{q^j}; level j is certified
/// mod p^{t+j}.
struct PsiEvaluator {
    const PsiTable& table;
    const PadicScalar& x;
    long t;
    long n;  // -v(x)
    long q;
    std::map<long, PadicScalar> memo;

    PadicScalar at(long j) {
        auto it = memo.find(j);
        if (it != memo.end()) return it->second;
        PadicScalar xj = x.shift(j);
        long tj = t + j;
        PadicScalar r = [&] {
            if (j >= n) return eval_direct(table, xj, tj);
            PadicScalar acc = xj;
            for (long l = 1;; ++l) {
                long vl = j + l - n;  // valuation of p^{j+l} x
                if (vl > 0) {
                    mpz_class gain = pow_z(q, l) * vl - l;
                    if (gain >= tj) break;
                }
                acc = acc.sub(at(j + l).pow_ui(pow_ul(q, l)).shift(-l));
            }
            return acc;
        }();
        memo.emplace(j, r);
        return r;
    }
};

}  // namespace

PadicScalar eval_psi(const PsiTable& table, const PadicScalar& x, long t) {
    check_context(table, x);
    if (x.is_exact_zero()) return x;
    if (x.is_approx_zero()) {
        // isometric on the unit disc, so x == 0 mod p^k gives Psi(x) == 0 too
        long k = x.valuation_lower_bound();
        if (k < 0)
            throw insufficient_precision("argument of unknown negative valuation");
        return PadicScalar::approx_zero(x.ctx(), std::min(k, t));
    }
    if (x.valuation() >= 0) return eval_direct(table, x, t);
    PsiEvaluator ev{table, x, t, -x.valuation(), table.q.get_si(), {}};
    PadicScalar r = ev.at(0);
    if (r.known_mod() < t)
        throw insufficient_precision("result certified only mod p^" +
                                     std::to_string(r.known_mod()));
    return r;
}

PadicScalar eval_psi_derivative(const PsiTable& table, const PadicScalar& x, long t) {
    check_context(table, x);
    const FieldContext& ctx = x.ctx();
    long ql = table.q.get_si();
    if (x.is_zero()) {
        // Psi'(0) = 1; nonzero x == 0 mod p^k changes it only mod p^k
        long k = x.valuation_lower_bound();
        PadicScalar one = PadicScalar::from_integer(ctx, 1, t);
        return k >= t || x.is_exact_zero()
                   ? one
                   : PadicScalar::from_coords(ctx, {mpz_class(1)}, 0, std::min(k, t));
    }
    long v = x.valuation();
    long n = std::max(0L, -v);
    long B = geometric(ql, n);
    long M = truncation_bound(ql, n, t - n);
    if (M > table.trunc_degree()) throw insufficient_series_truncation(static_cast<int>(M));
    if (x.precision() < t + B)
        throw insufficient_precision("derivative argument needs " +
                                     std::to_string(t + B) + " unit digits");

    mpz_class mod = ctx.p_pow(t + B);
    const std::vector<mpz_class>& u = x.unit_coords();
    std::vector<mpz_class> uc(u);
    for (auto& c : uc) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    std::vector<mpz_class> pw(ctx.f());
    pw[0] = 1;  // x-unit^{m-1}, starting at m = 1
    std::vector<mpz_class> acc(ctx.f());
    mpz_class scalar, rem;
    for (long m = 1; m <= std::min(M, static_cast<long>(table.trunc_degree())); ++m) {
        if (table.coeff(m) != 0) {
            // m * b_m * p^{B + (m-1)v}, integral by the polygon bound
            long e = B + (m - 1) * v;
            scalar = m * table.coeff(m);
            if (e >= 0) {
                scalar *= ctx.p_pow(e);
            } else {
                mpz_class d = ctx.p_pow(-e);
                mpz_class qq;
                mpz_tdiv_qr(qq.get_mpz_t(), rem.get_mpz_t(), scalar.get_mpz_t(),
                            d.get_mpz_t());
                if (rem != 0) throw non_integral("derivative term below polygon bound");
                scalar = qq;
            }
            for (int i = 0; i < ctx.f(); ++i) acc[i] += scalar * pw[i];
        }
        pw = ctx.zq_mul(pw, uc, mod);
    }
    return PadicScalar::from_coords(ctx, std::move(acc), -B, t + B);
}

FqElem psi_digit(const PsiTable& table, const PadicScalar& a, long i) {
    check_context(table, a);
    if (a.is_exact_zero()) return a.ctx().fq_zero();
    return eval_psi(table, a.shift(-i), 1).residue();
}

std::pair<long, std::vector<FqElem>> witt_bivector_decompose(const PsiTable& table,
                                                             const PadicScalar& a,
                                                             int count) {
    check_context(table, a);
    if (a.is_exact_zero())
        return {0, std::vector<FqElem>(count, a.ctx().fq_zero())};
    long v = a.valuation();
    std::vector<FqElem> digits;
    digits.reserve(count);
    for (int k = 0; k < count; ++k) digits.push_back(psi_digit(table, a, v + k));
    return {v, digits};
}

std::vector<FqElem> a_sequence_oracle(const PadicScalar& a, int i_max) {
    const FieldContext& ctx = a.ctx();
    if (a.valuation_lower_bound() < 0) throw error("a-sequence needs an integral start");
    unsigned long q = ctx.q().get_ui();
    std::vector<PadicScalar> seq;
    seq.push_back(a);
    for (int i = 1; i <= i_max; ++i) {
        PadicScalar acc = PadicScalar::exact_zero(ctx);
        for (int j = 0; j < i; ++j) {
            unsigned long e1 = 1, e2 = 1;
            for (int r = 0; r < i - j - 1; ++r) e1 *= q;
            e2 = e1 * q;
            PadicScalar term =
                seq[j].pow_ui(e1).sub(seq[j].pow_ui(e2)).shift(j - i);
            acc = acc.add(term);
        }
        seq.push_back(acc);
    }
    std::vector<FqElem> out;
    out.reserve(seq.size());
    for (const PadicScalar& s : seq) out.push_back(s.residue());
    return out;
}

bool bivector_congruence_check(const PsiTable& table, const PadicScalar& a, long i) {
    check_context(table, a);
    if (a.is_exact_zero()) return true;
    if (a.is_approx_zero()) {
        if (a.valuation_lower_bound() >= i + 1) return true;
        throw insufficient_precision("cannot certify the congruence");
    }
    long v = a.valuation();
    long L = -v + i;
    if (L < 0) return true;  // then v >= i+1 and both sides vanish mod p^{i+1}
    PadicScalar sum = PadicScalar::exact_zero(a.ctx());
    long ql = table.q.get_si();
    for (long l = 0; l <= L; ++l) {
        PadicScalar u = eval_psi(table, a.shift(l), i + 1 + l);
        sum = sum.add(u.pow_ui(pow_ul(ql, l)).shift(-l));
    }
    return a.sub(sum).valuation_lower_bound() >= i + 1;
}

std::vector<ZeroRecord> find_zeros(const PsiTable& table, const FieldContext& ctx,
                                   int n, long t) {
    if (table.p != ctx.p() || table.f != ctx.f())
        throw error("context does not match the series parameters");
    if (n < 1) throw error("zero level must be >= 1");
    long ql = table.q.get_si();
    long B = geometric(ql, n);
    // each Newton step can shed ~B digits of certified precision, so budget
    // generously for the ~log2(t) steps needed
    long P = t + 12 * B + 30;

    // residue discs: Teichmuller digit strings of length n, leading digit
    // nonzero; digits enumerated by base-p odometer over coordinates
    long per_digit = 1;
    for (int i = 0; i < ctx.f(); ++i) per_digit *= ctx.p();
    auto digit_of = [&](long code) {
        FqElem d = ctx.fq_zero();
        for (int i = 0; i < ctx.f(); ++i) {
            d.coords[i] = code % ctx.p();
            code /= ctx.p();
        }
        return d;
    };

    std::vector<ZeroRecord> records;
    long total = 1;
    for (int k = 1; k < n; ++k) total *= per_digit;
    for (long lead = 1; lead < per_digit; ++lead) {
        for (long rest = 0; rest < total; ++rest) {
            std::vector<FqElem> digits{digit_of(lead)};
            long code = rest;
            for (int k = 1; k < n; ++k) {
                digits.push_back(digit_of(code % per_digit));
                code /= per_digit;
            }

            PadicScalar z = PadicScalar::exact_zero(ctx);
            for (int k = 0; k < n; ++k) {
                if (digits[k].is_zero()) continue;
                z = z.add(teichmuller_lift(
                              PadicScalar::from_residue(ctx, digits[k], P), P)
                              .shift(k - n));
            }
            PadicScalar z0 = z;

            long best = LONG_MIN;
            int stall = 0;
            bool done = false;
            for (int iter = 0; iter < 80 && !done; ++iter) {
                long tcur = std::min(t + B + 5, z.known_mod());
                if (tcur < t)
                    throw insufficient_precision("Newton iterate degraded below target");
                PadicScalar fz = eval_psi(table, z, tcur);
                long rb = fz.valuation_lower_bound();
                if (rb >= t) {
                    if (z.valuation() != -n) throw error("zero drifted out of its disc");
                    records.push_back(ZeroRecord{n, digits, z, rb});
                    done = true;
                    break;
                }
                if (rb <= best) {
                    if (++stall >= 3) throw newton_stall();
                } else {
                    best = rb;
                    stall = 0;
                }
                long td = std::min(tcur, z.precision() - B);
                if (td < 1)
                    throw insufficient_precision("Newton iterate degraded below target");
                PadicScalar dz = eval_psi_derivative(table, z, td);
                z = z.sub(fz.mul(dz.inv()));
            }
            if (!done) throw newton_stall();
            // the refined zero must stay in its residue disc
            if (records.back().zero.sub(z0).valuation_lower_bound() < 1 - n)
                throw error("zero left its residue disc");
        }
    }
    return records;
}

std::vector<PadicScalar> schnirelmann_factor(const std::vector<ZeroRecord>& zeros,
                                             int n) {
    if (zeros.empty()) throw count_mismatch();
    const FieldContext& ctx = zeros[0].zero.ctx();
    mpz_class expected = pow_z(ctx.p(), static_cast<long>(ctx.f()) * n) -
                         pow_z(ctx.p(), static_cast<long>(ctx.f()) * (n - 1));
    if (mpz_class(zeros.size()) != expected) throw count_mismatch();
    for (const ZeroRecord& z : zeros)
        if (z.n != n || z.zero.valuation() != -n) throw count_mismatch();

    std::vector<PadicScalar> coeffs{
        PadicScalar::from_integer(ctx, 1, zeros[0].zero.precision())};
    for (const ZeroRecord& z : zeros) {
        PadicScalar c = z.zero.inv().neg();
        std::vector<PadicScalar> next;
        next.reserve(coeffs.size() + 1);
        for (size_t k = 0; k <= coeffs.size(); ++k) {
            PadicScalar term = PadicScalar::exact_zero(ctx);
            if (k < coeffs.size()) term = coeffs[k];
            if (k > 0) term = term.add(c.mul(coeffs[k - 1]));
            next.push_back(term);
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

std::vector<std::optional<long>> addition_law_check(const PsiTable& table,
                                                    const PadicScalar& x,
                                                    const PadicScalar& y, int n_max,
                                                    long K) {
    check_context(table, x);
    check_context(table, y);
    if (table.f != 1) throw unsupported_ring("covector addition law needs q = p");
    std::vector<std::optional<long>> out(n_max + 1);
    if (x.is_exact_zero() || y.is_exact_zero()) return out;  // all exact zeros
    if (x.valuation_lower_bound() < 0 || y.valuation_lower_bound() < 0)
        throw error("addition law check expects integral inputs");

    const FieldContext& ctx = x.ctx();
    std::vector<std::vector<mpz_class>> px, py;
    for (int j = 0; j <= n_max; ++j) {
        px.push_back(eval_psi(table, x.shift(j), K).integral_coords(K));
        py.push_back(eval_psi(table, y.shift(j), K).integral_coords(K));
    }
    PadicScalar lhs = eval_psi(table, x.add(y), K);

    WittRing R = WittRing::integers(ctx.p());
    for (int n = 0; n <= n_max; ++n) {
        WittVector wx{R, {}}, wy{R, {}};
        for (int k = 0; k <= n; ++k) {
            wx.components.push_back(px[n - k]);
            wy.components.push_back(py[n - k]);
        }
        WittVector s = witt_add(wx, wy);
        PadicScalar rhs =
            PadicScalar::from_coords(ctx, {s.components[n][0]}, 0, K);
        PadicScalar diff = lhs.sub(rhs);
        if (!diff.is_exact_zero()) out[n] = diff.valuation_lower_bound();
    }
    return out;
}

bool uniform_continuity_check(const PsiTable& table, const FieldContext& ctx,
                              int samples, int j_max, unsigned seed) {
    if (table.f != 1 || ctx.f() != 1) throw unsupported_ring("needs q = p");
    long W = j_max + 26;
    std::mt19937 rng(seed);
    mpz_class mod = ctx.p_pow(W);
    auto random_unit = [&] {
        mpz_class r = 0;
        for (long b = 0; b < W; ++b) {
            r = r * ctx.p() + static_cast<long>(rng() % ctx.p());
        }
        r = r * ctx.p() + 1 + static_cast<long>(rng() % (ctx.p() - 1));
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
        return r;
    };
    for (int s = 0; s < samples; ++s) {
        long j = 1 + static_cast<long>(rng() % j_max);
        long v0 = static_cast<long>(rng() % 6) - 3;
        PadicScalar x = PadicScalar::from_coords(ctx, {random_unit()}, v0, W);
        PadicScalar d = PadicScalar::from_coords(ctx, {random_unit()}, j, W);
        PadicScalar lhs = eval_psi(table, x.add(d), j + 8);
        PadicScalar rhs = eval_psi(table, x, j + 8);
        if (lhs.sub(rhs).valuation_lower_bound() < j) return false;
    }
    return true;
}

bool teichmuller_limit_check(const PsiTable& table, const PadicScalar& x, long i,
                             int k_max) {
    check_context(table, x);
    PadicScalar y = x.shift(i);
    if (y.is_exact_zero()) throw zero_digit();
    if (y.valuation_lower_bound() < 0) throw error("p^i x must be integral");
    long t = k_max + 3;
    PadicScalar u = eval_psi(table, y, t);
    FqElem d = u.residue();
    if (d.is_zero()) throw zero_digit();
    PadicScalar tau =
        teichmuller_lift(PadicScalar::from_residue(x.ctx(), d, t), t);
    for (int k = 0; k <= k_max; ++k) {
        unsigned long e = pow_ul(x.ctx().p(), k);
        if (u.pow_ui(e).sub(tau).valuation_lower_bound() < k + 1) return false;
    }
    return true;
}

}  // namespace psiq
