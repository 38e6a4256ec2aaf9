#include "psiq/witt.hpp"

#include <mutex>
#include <sstream>

namespace psiq {

namespace {

std::vector<unsigned> trim(std::vector<unsigned> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

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

}  // namespace

void SymPoly::insert(Monomial m, mpz_class c) {
    auto [it, fresh] = terms_.try_emplace(std::move(m), c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SymPoly SymPoly::constant(const mpz_class& c) {
    SymPoly r;
    if (c != 0) r.terms_[Monomial{}] = c;
    return r;
}

SymPoly SymPoly::var_x(int i) {
    SymPoly r;
    Monomial m;
    m.ex.assign(i + 1, 0);
    m.ex[i] = 1;
    r.terms_[std::move(m)] = 1;
    return r;
}

SymPoly SymPoly::var_y(int i) {
    SymPoly r;
    Monomial m;
    m.ey.assign(i + 1, 0);
    m.ey[i] = 1;
    r.terms_[std::move(m)] = 1;
    return r;
}

SymPoly SymPoly::add(const SymPoly& o) const {
    SymPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.insert(m, c);
    return r;
}

SymPoly SymPoly::sub(const SymPoly& o) const {
    SymPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.insert(m, -c);
    return r;
}

SymPoly SymPoly::mul(const SymPoly& o) const {
    SymPoly r;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m;
            m.ex.assign(std::max(ma.ex.size(), mb.ex.size()), 0);
            m.ey.assign(std::max(ma.ey.size(), mb.ey.size()), 0);
            for (size_t i = 0; i < ma.ex.size(); ++i) m.ex[i] += ma.ex[i];
            for (size_t i = 0; i < mb.ex.size(); ++i) m.ex[i] += mb.ex[i];
            for (size_t i = 0; i < ma.ey.size(); ++i) m.ey[i] += ma.ey[i];
            for (size_t i = 0; i < mb.ey.size(); ++i) m.ey[i] += mb.ey[i];
            r.insert(std::move(m), ca * cb);
        }
    }
    return r;
}

SymPoly SymPoly::pow_ui(unsigned long e) const {
    SymPoly result = constant(1);
    SymPoly base = *this;
    while (e > 0) {
        if (e & 1UL) result = result.mul(base);
        e >>= 1;
        if (e > 0) base = base.mul(base);
    }
    return result;
}

SymPoly SymPoly::scaled(const mpz_class& c) const {
    SymPoly r;
    if (c == 0) return r;
    for (const auto& [m, coef] : terms_) r.terms_[m] = coef * c;
    return r;
}

SymPoly SymPoly::exact_div(const mpz_class& d) const {
    SymPoly r;
    mpz_class q, rem;
    for (const auto& [m, coef] : terms_) {
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), coef.get_mpz_t(), d.get_mpz_t());
        if (rem != 0) throw non_integral("symbolic coefficient not divisible");
        r.terms_[m] = q;
    }
    return r;
}

SymPoly SymPoly::shifted_vars() const {
    SymPoly r;
    for (const auto& [m, c] : terms_) {
        Monomial s;
        if (!m.ex.empty()) {
            s.ex.assign(m.ex.size() + 1, 0);
            std::copy(m.ex.begin(), m.ex.end(), s.ex.begin() + 1);
        }
        if (!m.ey.empty()) {
            s.ey.assign(m.ey.size() + 1, 0);
            std::copy(m.ey.begin(), m.ey.end(), s.ey.begin() + 1);
        }
        r.terms_[std::move(s)] = c;
    }
    return r;
}

mpz_class SymPoly::eval_int(const std::vector<mpz_class>& xs,
                            const std::vector<mpz_class>& ys) const {
    mpz_class total = 0;
    for (const auto& [m, c] : terms_) {
        mpz_class term = c;
        mpz_class t;
        for (size_t i = 0; i < m.ex.size(); ++i) {
            if (m.ex[i] == 0) continue;
            mpz_pow_ui(t.get_mpz_t(), xs.at(i).get_mpz_t(), m.ex[i]);
            term *= t;
        }
        for (size_t i = 0; i < m.ey.size(); ++i) {
            if (m.ey[i] == 0) continue;
            mpz_pow_ui(t.get_mpz_t(), ys.at(i).get_mpz_t(), m.ey[i]);
            term *= t;
        }
        total += term;
    }
    return total;
}

std::string SymPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << c;
        for (size_t i = 0; i < m.ex.size(); ++i) {
            if (m.ex[i] == 0) continue;
            out << "*X" << i;
            if (m.ex[i] > 1) out << "^" << m.ex[i];
        }
        for (size_t i = 0; i < m.ey.size(); ++i) {
            if (m.ey[i] == 0) continue;
            out << "*Y" << i;
            if (m.ey[i] > 1) out << "^" << m.ey[i];
        }
    }
    return out.str();
}

std::vector<SymPoly> phi_polynomials(long p, int n) {
    static std::mutex cache_mutex;
    static std::map<std::pair<long, int>, std::vector<SymPoly>> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({p, n});
        if (it != cache.end()) return it->second;
    }

    std::vector<SymPoly> phis;
    for (int k = 0; k <= n; ++k) {
        // w_k(X) + w_k(Y)
        SymPoly rhs;
        for (int i = 0; i <= k; ++i) {
            unsigned long e = pow_ul(p, k - i);
            mpz_class pi = pow_z(p, i);
            rhs = rhs.add(SymPoly::var_x(i).pow_ui(e).scaled(pi));
            rhs = rhs.add(SymPoly::var_y(i).pow_ui(e).scaled(pi));
        }
        for (int i = 0; i < k; ++i)
            rhs = rhs.sub(phis[i].pow_ui(pow_ul(p, k - i)).scaled(pow_z(p, i)));
        phis.push_back(rhs.exact_div(pow_z(p, k)));
    }

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.try_emplace({p, n}, phis);
    return phis;
}

bool isobaric_check(const std::vector<SymPoly>& phis, long p) {
    for (size_t k = 0; k < phis.size(); ++k) {
        mpz_class target = pow_z(p, static_cast<long>(k));
        for (const auto& [m, c] : phis[k].terms()) {
            mpz_class weight = 0;
            for (size_t i = 0; i < m.ex.size(); ++i)
                weight += m.ex[i] * pow_z(p, static_cast<long>(i));
            for (size_t i = 0; i < m.ey.size(); ++i)
                weight += m.ey[i] * pow_z(p, static_cast<long>(i));
            if (weight != target) return false;
        }
    }
    return true;
}

bool shift_congruence_check(const std::vector<SymPoly>& phis) {
    if (phis.size() < 2) throw error("need at least two polynomials");
    for (size_t i = 1; i < phis.size(); ++i) {
        SymPoly diff = phis[i].sub(phis[i - 1].shifted_vars());
        for (const auto& [m, c] : diff.terms()) {
            bool has_x0 = !m.ex.empty() && m.ex[0] > 0;
            bool has_y0 = !m.ey.empty() && m.ey[0] > 0;
            if (!has_x0 || !has_y0) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

WittRing WittRing::fq(long p, int f) {
    WittRing r{Kind::Fq, p, f, 1, std::make_shared<FieldContext>(p, f)};
    return r;
}

WittRing WittRing::zmod(long p, int a) {
    if (a < 1) throw error("modulus exponent must be >= 1");
    WittRing r{Kind::Zmod, p, 1, a, nullptr};
    // reuse the primality check
    FieldContext check(p, 1);
    return r;
}

WittRing WittRing::integers(long p) {
    WittRing r{Kind::Integers, p, 1, 1, nullptr};
    FieldContext check(p, 1);
    return r;
}

std::vector<mpz_class> WittRing::zero_elem() const {
    return std::vector<mpz_class>(coord_len());
}

std::vector<mpz_class> WittRing::from_int(long v) const {
    std::vector<mpz_class> e(coord_len());
    e[0] = v;
    return reduce(std::move(e));
}

std::vector<mpz_class> WittRing::reduce(std::vector<mpz_class> e) const {
    if (kind == Kind::Integers) return e;
    mpz_class mod = kind == Kind::Fq ? mpz_class(p) : [&] {
        mpz_class m;
        mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(a));
        return m;
    }();
    for (auto& c : e) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    return e;
}

WittVector witt_zero(const WittRing& ring, int length) {
    return WittVector{ring, std::vector<std::vector<mpz_class>>(
                                length, ring.zero_elem())};
}

namespace {

// multiplication of integral lifts in Z (coord_len 1) or Z[X]/(modulus)
std::vector<mpz_class> lift_mul(const WittRing& ring, const std::vector<mpz_class>& a,
                                const std::vector<mpz_class>& b) {
    if (ring.coord_len() == 1) return {a[0] * b[0]};
    return ring.ctx->zx_mul(a, b);
}

std::vector<mpz_class> lift_pow(const WittRing& ring, const std::vector<mpz_class>& a,
                                unsigned long e) {
    std::vector<mpz_class> result = ring.zero_elem();
    result[0] = 1;
    std::vector<mpz_class> base = a;
    while (e > 0) {
        if (e & 1UL) result = lift_mul(ring, result, base);
        e >>= 1;
        if (e > 0) base = lift_mul(ring, base, base);
    }
    return result;
}

// phi_k of the integral lifts, computed for k = 0..n by the ghost recursion
std::vector<std::vector<mpz_class>> ghost_recursion(
    const WittRing& ring, const std::vector<std::vector<mpz_class>>& x,
    const std::vector<std::vector<mpz_class>>& y) {
    int len = static_cast<int>(x.size());
    std::vector<std::vector<mpz_class>> s;
    for (int k = 0; k < len; ++k) {
        std::vector<mpz_class> acc = ring.zero_elem();
        for (int i = 0; i <= k; ++i) {
            unsigned long e = pow_ul(ring.p, k - i);
            mpz_class pi = pow_z(ring.p, i);
            std::vector<mpz_class> xe = lift_pow(ring, x[i], e);
            std::vector<mpz_class> ye = lift_pow(ring, y[i], e);
            for (int c = 0; c < ring.coord_len(); ++c)
                acc[c] += pi * (xe[c] + ye[c]);
        }
        for (int i = 0; i < k; ++i) {
            std::vector<mpz_class> se = lift_pow(ring, s[i], pow_ul(ring.p, k - i));
            mpz_class pi = pow_z(ring.p, i);
            for (int c = 0; c < ring.coord_len(); ++c) acc[c] -= pi * se[c];
        }
        mpz_class pk = pow_z(ring.p, k);
        mpz_class q, rem;
        for (auto& c : acc) {
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
            if (rem != 0) throw non_integral("ghost recursion coefficient");
            c = q;
        }
        s.push_back(std::move(acc));
    }
    return s;
}

}  // namespace

WittVector witt_add(const WittVector& a, const WittVector& b) {
    if (!(a.ring == b.ring)) throw ring_mismatch();
    if (a.length() != b.length()) throw length_mismatch();
    std::vector<std::vector<mpz_class>> s =
        ghost_recursion(a.ring, a.components, b.components);
    WittVector r{a.ring, {}};
    r.components.reserve(s.size());
    for (auto& e : s) r.components.push_back(a.ring.reduce(std::move(e)));
    return r;
}

WittVector verschiebung(const WittVector& a) {
    WittVector r{a.ring, {}};
    r.components.reserve(a.components.size() + 1);
    r.components.push_back(a.ring.zero_elem());
    for (const auto& c : a.components) r.components.push_back(c);
    return r;
}

WittVector frobenius(const WittVector& a) {
    if (a.ring.kind != WittRing::Kind::Fq)
        throw unsupported_ring("Frobenius needs characteristic p");
    WittVector r{a.ring, {}};
    for (const auto& c : a.components)
        r.components.push_back(a.ring.reduce(
            lift_pow(a.ring, c, static_cast<unsigned long>(a.ring.p))));
    return r;
}

WittVector teichmuller_witt(const WittRing& ring, const std::vector<mpz_class>& t,
                            int length) {
    WittVector r = witt_zero(ring, length);
    r.components[0] = ring.reduce(std::vector<mpz_class>(t));
    return r;
}

std::vector<mpz_class> to_ghost(const WittVector& a) {
    if (a.ring.kind != WittRing::Kind::Integers)
        throw unsupported_ring("ghost transform is over Z");
    std::vector<mpz_class> w(a.components.size());
    for (size_t k = 0; k < w.size(); ++k) {
        for (size_t i = 0; i <= k; ++i) {
            std::vector<mpz_class> e = lift_pow(
                a.ring, a.components[i], pow_ul(a.ring.p, static_cast<long>(k - i)));
            w[k] += pow_z(a.ring.p, static_cast<long>(i)) * e[0];
        }
    }
    return w;
}

WittVector from_ghost(const WittRing& ring, const std::vector<mpz_class>& ghost) {
    if (ring.kind != WittRing::Kind::Integers)
        throw unsupported_ring("ghost transform is over Z");
    WittVector r{ring, {}};
    mpz_class q, rem;
    for (size_t k = 0; k < ghost.size(); ++k) {
        mpz_class acc = ghost[k];
        for (size_t i = 0; i < k; ++i) {
            std::vector<mpz_class> e = lift_pow(
                ring, r.components[i], pow_ul(ring.p, static_cast<long>(k - i)));
            acc -= pow_z(ring.p, static_cast<long>(i)) * e[0];
        }
        mpz_class pk = pow_z(ring.p, static_cast<long>(k));
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), pk.get_mpz_t());
        if (rem != 0) throw non_integral("ghost vector is not in the image");
        r.components.push_back({q});
    }
    return r;
}

}  // namespace psiq
