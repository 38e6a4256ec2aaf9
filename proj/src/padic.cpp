#include "psiq/padic.hpp"

#include <algorithm>
#include <climits>

namespace psiq {

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// F_p[X] helpers on dense coefficient vectors (lowest degree first).
std::vector<long> fp_trim(std::vector<long> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

// Remainder of a by monic-normalized b over F_p.
std::vector<long> fp_rem(std::vector<long> a, const std::vector<long>& b, long p) {
    a = fp_trim(std::move(a));
    std::vector<long> bb = fp_trim(b);
    long lead = bb.back();
    // lead inverse mod p
    long inv = 1;
    for (long t = 1; t < p; ++t)
        if (lead * t % p == 1) { inv = t; break; }
    while (a.size() >= bb.size()) {
        long c = a.back() * inv % p;
        size_t off = a.size() - bb.size();
        for (size_t i = 0; i < bb.size(); ++i)
            a[off + i] = ((a[off + i] - c * bb[i]) % p + p) % p;
        a = fp_trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

// Brute-force irreducibility over F_p: trial division by every monic
// polynomial of degree 1..deg/2. Feasible for the supported f <= 4.
bool fp_irreducible(const std::vector<long>& poly, long p) {
    int deg = static_cast<int>(poly.size()) - 1;
    if (deg <= 0) return false;
    if (deg == 1) return true;
    for (int d = 1; 2 * d <= deg; ++d) {
        // enumerate monic divisors of degree d
        std::vector<long> div(d + 1, 0);
        div[d] = 1;
        long combos = 1;
        for (int i = 0; i < d; ++i) combos *= p;
        for (long code = 0; code < combos; ++code) {
            long c = code;
            for (int i = 0; i < d; ++i) {
                div[i] = c % p;
                c /= p;
            }
            if (fp_rem(poly, div, p).empty()) return false;
        }
    }
    return true;
}

std::vector<long> mod_p(const std::vector<mpz_class>& a, long p) {
    std::vector<long> r(a.size());
    mpz_class t;
    for (size_t i = 0; i < a.size(); ++i) {
        t = a[i] % p;
        long v = t.get_si();
        r[i] = (v % p + p) % p;
    }
    return r;
}

long vp_of(const mpz_class& x, long p, long cap) {
    if (x == 0) return cap;
    mpz_class r;
    mpz_class pz = p;
    long c = static_cast<long>(mpz_remove(r.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
    return std::min(c, cap);
}

}  // namespace

FieldContext::FieldContext(long p, int f) : p_(p), f_(f) {
    if (!is_prime(p)) throw error("p = " + std::to_string(p) + " is not prime");
    if (f < 1) throw error("f must be >= 1");
    if (f == 1) {
        modulus_ = {0, 1};  // X
    } else {
        // first monic irreducible of degree f in lexicographic order
        std::vector<long> cand(f + 1, 0);
        cand[f] = 1;
        long combos = 1;
        for (int i = 0; i < f; ++i) combos *= p;
        bool found = false;
        for (long code = 0; code < combos && !found; ++code) {
            long c = code;
            for (int i = 0; i < f; ++i) {
                cand[i] = c % p;
                c /= p;
            }
            if (fp_irreducible(cand, p)) {
                modulus_.assign(cand.begin(), cand.end());
                found = true;
            }
        }
        if (!found) throw error("no irreducible modulus found");  // cannot happen
    }
    validate();
}

FieldContext::FieldContext(long p, int f, std::vector<mpz_class> modulus)
    : p_(p), f_(f), modulus_(std::move(modulus)) {
    if (!is_prime(p)) throw error("p = " + std::to_string(p) + " is not prime");
    if (f < 1) throw error("f must be >= 1");
    validate();
}

void FieldContext::validate() const {
    if (static_cast<int>(modulus_.size()) != f_ + 1 || modulus_[f_] != 1)
        throw error("modulus must be monic of degree f");
    if (f_ > 1 && !fp_irreducible(mod_p(modulus_, p_), p_))
        throw error("modulus is reducible mod p");
    mpz_class q = 1;
    for (int i = 0; i < f_; ++i) q *= p_;
    const_cast<FieldContext*>(this)->q_ = q;
}

mpz_class FieldContext::p_pow(long e) const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_),
                  static_cast<unsigned long>(e));
    return r;
}

FqElem FieldContext::fq_from_int(long v) const {
    FqElem e = fq_zero();
    e.coords[0] = ((v % p_) + p_) % p_;
    return e;
}

FqElem FieldContext::fq_add(const FqElem& a, const FqElem& b) const {
    FqElem r = fq_zero();
    for (int i = 0; i < f_; ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % p_;
    return r;
}

FqElem FieldContext::fq_sub(const FqElem& a, const FqElem& b) const {
    FqElem r = fq_zero();
    for (int i = 0; i < f_; ++i)
        r.coords[i] = ((a.coords[i] - b.coords[i]) % p_ + p_) % p_;
    return r;
}

FqElem FieldContext::fq_mul(const FqElem& a, const FqElem& b) const {
    std::vector<long> prod(2 * f_ - 1, 0);
    for (int i = 0; i < f_; ++i)
        for (int j = 0; j < f_; ++j)
            prod[i + j] = (prod[i + j] + a.coords[i] * b.coords[j]) % p_;
    std::vector<long> m = mod_p(modulus_, p_);
    for (int i = 2 * f_ - 2; i >= f_; --i) {
        long c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < f_; ++j)
            prod[i - f_ + j] = ((prod[i - f_ + j] - c * m[j]) % p_ + p_) % p_;
    }
    FqElem r = fq_zero();
    for (int i = 0; i < f_; ++i) r.coords[i] = prod[i];
    return r;
}

FqElem FieldContext::fq_pow(const FqElem& a, const mpz_class& e) const {
    FqElem result = fq_from_int(1);
    FqElem base = a;
    mpz_class n = e;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) result = fq_mul(result, base);
        n >>= 1;
        if (n > 0) base = fq_mul(base, base);
    }
    return result;
}

std::vector<mpz_class> FieldContext::zx_mul(const std::vector<mpz_class>& a,
                                            const std::vector<mpz_class>& b) const {
    std::vector<mpz_class> prod(2 * f_ - 1);
    for (int i = 0; i < f_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < f_; ++j) prod[i + j] += a[i] * b[j];
    }
    for (int i = 2 * f_ - 2; i >= f_; --i) {
        if (prod[i] == 0) continue;
        mpz_class c = prod[i];
        prod[i] = 0;
        for (int j = 0; j < f_; ++j) prod[i - f_ + j] -= c * modulus_[j];
    }
    prod.resize(f_);
    return prod;
}

std::vector<mpz_class> FieldContext::zq_mul(const std::vector<mpz_class>& a,
                                            const std::vector<mpz_class>& b,
                                            const mpz_class& mod) const {
    std::vector<mpz_class> r = zx_mul(a, b);
    for (int i = 0; i < f_; ++i)
        mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), mod.get_mpz_t());
    return r;
}

std::vector<mpz_class> FieldContext::zq_pow(const std::vector<mpz_class>& a, mpz_class e,
                                            const mpz_class& mod) const {
    std::vector<mpz_class> result(f_);
    result[0] = 1;
    std::vector<mpz_class> base = a;
    for (auto& c : base) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) result = zq_mul(result, base, mod);
        e >>= 1;
        if (e > 0) base = zq_mul(base, base, mod);
    }
    return result;
}

std::vector<mpz_class> FieldContext::zq_inv(const std::vector<mpz_class>& a, long N) const {
    // Inverse mod p via a^(q-2) in F_q, then Hensel doubling to p^N.
    FqElem a0{std::vector<long>(f_)};
    mpz_class t;
    for (int i = 0; i < f_; ++i) {
        t = a[i] % p_;
        a0.coords[i] = ((t.get_si() % p_) + p_) % p_;
    }
    if (a0.is_zero()) throw division_by_zero();
    FqElem i0 = fq_pow(a0, q_ - 2);
    std::vector<mpz_class> x(f_);
    for (int i = 0; i < f_; ++i) x[i] = i0.coords[i];
    long k = 1;
    while (k < N) {
        k = std::min(2 * k, N);
        mpz_class mod = p_pow(k);
        // x <- x*(2 - a*x) mod p^k
        std::vector<mpz_class> ax = zq_mul(a, x, mod);
        for (auto& c : ax) c = -c;
        ax[0] += 2;
        x = zq_mul(x, ax, mod);
    }
    return x;
}

// ---------------------------------------------------------------------------

PadicScalar PadicScalar::exact_zero(const FieldContext& ctx) {
    return PadicScalar(ctx, State::ExactZero);
}

PadicScalar PadicScalar::approx_zero(const FieldContext& ctx, long known_mod) {
    PadicScalar s(ctx, State::ApproxZero);
    s.val_ = known_mod;
    s.prec_ = known_mod;
    return s;
}

PadicScalar PadicScalar::from_coords(const FieldContext& ctx, std::vector<mpz_class> coords,
                                     long base_val, long known_mod) {
    if (known_mod <= 0) return approx_zero(ctx, base_val + known_mod);
    mpz_class mod = ctx.p_pow(known_mod);
    long w = known_mod;
    for (auto& c : coords) {
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
        w = std::min(w, vp_of(c, ctx.p(), known_mod));
    }
    if (w >= known_mod) return approx_zero(ctx, base_val + known_mod);
    PadicScalar s(ctx, State::Regular);
    s.val_ = base_val + w;
    s.prec_ = known_mod - w;
    mpz_class pw = ctx.p_pow(w);
    mpz_class um = ctx.p_pow(s.prec_);
    s.unit_.resize(ctx.f());
    for (int i = 0; i < ctx.f(); ++i) {
        mpz_class q = coords[i] / pw;
        mpz_mod(s.unit_[i].get_mpz_t(), q.get_mpz_t(), um.get_mpz_t());
    }
    return s;
}

PadicScalar PadicScalar::from_rational(const FieldContext& ctx, const mpz_class& num,
                                       const mpz_class& den, long N) {
    if (den == 0) throw zero_denominator();
    if (num == 0) return exact_zero(ctx);
    mpz_class n = num, d = den;
    mpz_class pz = ctx.p();
    long vn = static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(d.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t()));
    mpz_class mod = ctx.p_pow(N);
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw error("denominator not invertible");  // cannot happen after p-removal
    PadicScalar s(ctx, State::Regular);
    s.val_ = vn - vd;
    s.prec_ = N;
    s.unit_.resize(ctx.f());
    mpz_class u = n * dinv;
    mpz_mod(s.unit_[0].get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
    return s;
}

PadicScalar PadicScalar::from_integer(const FieldContext& ctx, const mpz_class& n, long N) {
    return from_rational(ctx, n, 1, N);
}

PadicScalar PadicScalar::from_residue(const FieldContext& ctx, const FqElem& d, long N) {
    if (d.is_zero()) return exact_zero(ctx);
    std::vector<mpz_class> coords(ctx.f());
    for (int i = 0; i < ctx.f(); ++i) coords[i] = d.coords[i];
    return from_coords(ctx, std::move(coords), 0, N);
}

long PadicScalar::valuation() const {
    if (state_ != State::Regular)
        throw insufficient_precision("valuation of a (possibly) zero element");
    return val_;
}

long PadicScalar::valuation_lower_bound() const {
    switch (state_) {
        case State::ExactZero: return LONG_MAX;
        case State::ApproxZero: return val_;
        default: return val_;
    }
}

long PadicScalar::known_mod() const {
    switch (state_) {
        case State::ExactZero: return LONG_MAX;
        case State::ApproxZero: return val_;
        default: return val_ + prec_;
    }
}

PadicScalar PadicScalar::neg() const {
    if (state_ != State::Regular) return *this;
    PadicScalar r = *this;
    mpz_class mod = ctx_->p_pow(prec_);
    for (auto& c : r.unit_) {
        c = -c;
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    }
    return r;
}

PadicScalar PadicScalar::add(const PadicScalar& o) const {
    if (ctx_ != o.ctx_) throw error("mixed field contexts");
    if (is_exact_zero()) return o;
    if (o.is_exact_zero()) return *this;
    long k = std::min(known_mod(), o.known_mod());
    if (is_approx_zero() && o.is_approx_zero())
        return approx_zero(*ctx_, k);
    if (is_approx_zero() || o.is_approx_zero()) {
        const PadicScalar& r = is_approx_zero() ? o : *this;
        if (r.val_ >= k) return approx_zero(*ctx_, k);
        PadicScalar s = r;
        s.prec_ = k - r.val_;
        mpz_class mod = ctx_->p_pow(s.prec_);
        for (auto& c : s.unit_) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
        return s;
    }
    long v = std::min(val_, o.val_);
    long known = k - v;
    if (known <= 0) return approx_zero(*ctx_, k);
    std::vector<mpz_class> coords(ctx_->f());
    mpz_class pa = ctx_->p_pow(val_ - v);
    mpz_class pb = ctx_->p_pow(o.val_ - v);
    for (int i = 0; i < ctx_->f(); ++i) coords[i] = unit_[i] * pa + o.unit_[i] * pb;
    return from_coords(*ctx_, std::move(coords), v, known);
}

PadicScalar PadicScalar::sub(const PadicScalar& o) const { return add(o.neg()); }

PadicScalar PadicScalar::mul(const PadicScalar& o) const {
    if (ctx_ != o.ctx_) throw error("mixed field contexts");
    if (is_exact_zero() || o.is_exact_zero()) return exact_zero(*ctx_);
    if (is_approx_zero() || o.is_approx_zero())
        return approx_zero(*ctx_, valuation_lower_bound() + o.valuation_lower_bound());
    PadicScalar r(*ctx_, State::Regular);
    r.val_ = val_ + o.val_;
    r.prec_ = std::min(prec_, o.prec_);
    r.unit_ = ctx_->zq_mul(unit_, o.unit_, ctx_->p_pow(r.prec_));
    return r;
}

PadicScalar PadicScalar::inv() const {
    if (is_exact_zero()) throw division_by_zero();
    if (is_approx_zero())
        throw insufficient_precision("inverting an element indistinguishable from zero");
    PadicScalar r(*ctx_, State::Regular);
    r.val_ = -val_;
    r.prec_ = prec_;
    r.unit_ = ctx_->zq_inv(unit_, prec_);
    return r;
}

PadicScalar PadicScalar::pow_ui(unsigned long e) const {
    if (e == 0) return from_integer(*ctx_, 1, state_ == State::Regular ? prec_ : 64);
    PadicScalar result = *this;
    PadicScalar base = *this;
    // binary exponentiation, consuming bits above the leading one
    int top = 63;
    while (top > 0 && !((e >> top) & 1UL)) --top;
    for (int b = top - 1; b >= 0; --b) {
        result = result.mul(result);
        if ((e >> b) & 1UL) result = result.mul(base);
    }
    return result;
}

PadicScalar PadicScalar::shift(long j) const {
    PadicScalar r = *this;
    if (state_ == State::ExactZero) return r;
    r.val_ += j;
    if (state_ == State::ApproxZero) r.prec_ = r.val_;
    return r;
}

FqElem PadicScalar::residue() const {
    if (is_exact_zero()) return ctx_->fq_zero();
    if (is_approx_zero()) {
        if (val_ >= 1) return ctx_->fq_zero();
        throw insufficient_precision("residue of element known only mod p^0");
    }
    if (val_ > 0) return ctx_->fq_zero();
    if (val_ < 0) throw non_unit();
    FqElem r = ctx_->fq_zero();
    mpz_class t;
    for (int i = 0; i < ctx_->f(); ++i) {
        t = unit_[i] % ctx_->p();
        r.coords[i] = ((t.get_si() % ctx_->p()) + ctx_->p()) % ctx_->p();
    }
    return r;
}

std::vector<mpz_class> PadicScalar::integral_coords(long K) const {
    if (is_exact_zero()) return std::vector<mpz_class>(ctx_->f());
    if (known_mod() < K)
        throw insufficient_precision("element known mod p^" +
                                     std::to_string(known_mod()) +
                                     ", need p^" + std::to_string(K));
    if (is_approx_zero()) return std::vector<mpz_class>(ctx_->f());
    if (val_ < 0) throw non_unit();
    mpz_class mod = ctx_->p_pow(K);
    mpz_class pv = ctx_->p_pow(val_);
    std::vector<mpz_class> r(ctx_->f());
    for (int i = 0; i < ctx_->f(); ++i) {
        r[i] = unit_[i] * pv;
        mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), mod.get_mpz_t());
    }
    return r;
}

namespace {

// Iterate x -> x^q until stable mod p^N starting from a residue lift.
std::vector<mpz_class> teich_coords(const FieldContext& ctx, const FqElem& d, long N) {
    mpz_class mod = ctx.p_pow(N);
    std::vector<mpz_class> x(ctx.f());
    for (int i = 0; i < ctx.f(); ++i) x[i] = d.coords[i];
    for (long it = 0; it < N + 1; ++it) {
        std::vector<mpz_class> nx = ctx.zq_pow(x, ctx.q(), mod);
        if (nx == x) break;
        x = std::move(nx);
    }
    return x;
}

}  // namespace

PadicScalar teichmuller_lift(const PadicScalar& a, long N) {
    if (a.is_zero() || a.val_ != 0) throw non_unit();
    PadicScalar r(*a.ctx_, PadicScalar::State::Regular);
    r.val_ = 0;
    r.prec_ = N;
    r.unit_ = teich_coords(*a.ctx_, a.residue(), N);
    return r;
}

std::pair<long, std::vector<FqElem>> digit_expansion(const PadicScalar& a, int count) {
    const FieldContext& ctx = a.ctx();
    if (a.is_exact_zero())
        return {0, std::vector<FqElem>(count, ctx.fq_zero())};
    if (a.is_approx_zero())
        throw insufficient_precision("digits of an element known only to be ~0");
    if (count > a.precision())
        throw insufficient_precision("requested " + std::to_string(count) +
                                     " digits, only " + std::to_string(a.precision()) +
                                     " determined");
    std::vector<FqElem> digits;
    digits.reserve(count);
    std::vector<mpz_class> r = a.unit_coords();
    long rem = a.precision();
    mpz_class t;
    for (int k = 0; k < count; ++k) {
        FqElem d = ctx.fq_zero();
        for (int i = 0; i < ctx.f(); ++i) {
            t = r[i] % ctx.p();
            d.coords[i] = ((t.get_si() % ctx.p()) + ctx.p()) % ctx.p();
        }
        digits.push_back(d);
        if (!d.is_zero()) {
            std::vector<mpz_class> tau = teich_coords(ctx, d, rem);
            for (int i = 0; i < ctx.f(); ++i) r[i] -= tau[i];
        }
        mpz_class mod = ctx.p_pow(rem);
        for (int i = 0; i < ctx.f(); ++i) {
            mpz_mod(r[i].get_mpz_t(), r[i].get_mpz_t(), mod.get_mpz_t());
            // exact by construction: r == [d] mod p
            r[i] /= ctx.p();
        }
        --rem;
    }
    return {a.valuation(), digits};
}

}  // namespace psiq
