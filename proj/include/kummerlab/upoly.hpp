/*
 * Dense univariate polynomials, factorization, and simple extensions F[z]/(phi).
 *
 * Field types provide Elem, zero/one/add/sub/neg/mul/inv/is_zero, frob_root,
 * characteristic(), order() as BigInt, and random(rng).
 */
#pragma once

#include "kummerlab/gf.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace kummerlab {

template <class F>
class UPoly {
public:
    using Elem = typename F::Elem;

    UPoly() = default;
    explicit UPoly(const F& f) : f_(&f) {}
    UPoly(const F& f, std::vector<Elem> c) : f_(&f), c_(std::move(c)) { trim(); }

    static UPoly constant(const F& f, const Elem& a) { return UPoly(f, {a}); }
    static UPoly x(const F& f) { return UPoly(f, {f.zero(), f.one()}); }
    static UPoly monomial(const F& f, const Elem& a, std::size_t n) {
        std::vector<Elem> c(n + 1, f.zero());
        c[n] = a;
        return UPoly(f, c);
    }

    const F& field() const { return *f_; }
    bool has_field() const { return f_ != nullptr; }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == f_->one(); }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_->zero(); }
    Elem lead() const { return c_.empty() ? f_->zero() : c_.back(); }

    UPoly monic() const {
        if (c_.empty()) return *this;
        Elem li = f_->inv(c_.back());
        std::vector<Elem> c = c_;
        for (auto& a : c) a = f_->mul(a, li);
        return UPoly(*f_, c);
    }

    UPoly operator+(const UPoly& o) const {
        const F& f = pick(o);
        std::vector<Elem> c(std::max(c_.size(), o.c_.size()), f.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] = f.add(c[i], o.c_[i]);
        return UPoly(f, c);
    }
    UPoly operator-(const UPoly& o) const {
        const F& f = pick(o);
        std::vector<Elem> c(std::max(c_.size(), o.c_.size()), f.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] = f.sub(c[i], o.c_[i]);
        return UPoly(f, c);
    }
    UPoly operator*(const UPoly& o) const {
        const F& f = pick(o);
        if (c_.empty() || o.c_.empty()) return UPoly(f);
        std::vector<Elem> c(c_.size() + o.c_.size() - 1, f.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (f.is_zero(c_[i])) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(c_[i], o.c_[j]));
        }
        return UPoly(f, c);
    }
    UPoly scale(const Elem& a) const {
        std::vector<Elem> c = c_;
        for (auto& x : c) x = f_->mul(x, a);
        return UPoly(*f_, c);
    }
    bool operator==(const UPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }
    bool operator<(const UPoly& o) const {
        if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
        return std::lexicographical_compare(c_.rbegin(), c_.rend(), o.c_.rbegin(), o.c_.rend());
    }

    Elem eval(const Elem& x) const {
        Elem r = f_->zero();
        for (std::size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, x), c_[i]);
        return r;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly(*f_);
        std::vector<Elem> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = f_->mul(f_->from_int(static_cast<long long>(i)), c_[i]);
        return UPoly(*f_, c);
    }

    /// g with g(x)^p = this, assuming only exponents divisible by p occur.
    UPoly pth_root() const {
        const unsigned p = f_->characteristic();
        std::vector<Elem> c;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i % p != 0) {
                if (!f_->is_zero(c_[i])) throw std::domain_error("not a p-th power");
                continue;
            }
            c.push_back(f_->frob_root(c_[i]));
        }
        return UPoly(*f_, c);
    }

    std::string str(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (f_->is_zero(c_[i])) continue;
            if (!s.empty()) s += " + ";
            s += "[" + f_->str(c_[i]) + "]";
            if (i > 0) s += var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return s;
    }

private:
    const F* f_ = nullptr;
    std::vector<Elem> c_;

    void trim() {
        while (!c_.empty() && f_->is_zero(c_.back())) c_.pop_back();
    }
    const F& pick(const UPoly& o) const { return f_ ? *f_ : *o.f_; }
};

template <class F>
std::pair<UPoly<F>, UPoly<F>> divmod(const UPoly<F>& a, const UPoly<F>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const F& f = b.field();
    using Elem = typename F::Elem;
    std::vector<Elem> r = a.coeffs();
    const int db = b.deg();
    if (a.deg() < db) return {UPoly<F>(f), a};
    std::vector<Elem> q(static_cast<std::size_t>(a.deg() - db + 1), f.zero());
    const Elem li = f.inv(b.lead());
    for (int i = a.deg(); i >= db; --i) {
        Elem c = r[static_cast<std::size_t>(i)];
        if (f.is_zero(c)) continue;
        c = f.mul(c, li);
        q[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j) {
            auto& t = r[static_cast<std::size_t>(i - db + j)];
            t = f.sub(t, f.mul(c, b.coeff(static_cast<std::size_t>(j))));
        }
    }
    return {UPoly<F>(f, q), UPoly<F>(f, r)};
}

template <class F>
UPoly<F> operator%(const UPoly<F>& a, const UPoly<F>& b) {
    return divmod(a, b).second;
}

template <class F>
UPoly<F> exact_div(const UPoly<F>& a, const UPoly<F>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
    return q;
}

/// Monic gcd (zero if both are zero).
template <class F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
    while (!b.is_zero()) {
        UPoly<F> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// s*a + t*b = gcd(a, b) (monic).
template <class F>
std::tuple<UPoly<F>, UPoly<F>, UPoly<F>> ext_gcd(const UPoly<F>& a, const UPoly<F>& b) {
    const F& f = a.has_field() ? a.field() : b.field();
    UPoly<F> r0 = a, r1 = b, s0 = UPoly<F>::constant(f, f.one()), s1(f), t0(f), t1 = UPoly<F>::constant(f, f.one());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    typename F::Elem li = f.inv(r0.lead());
    return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

template <class F>
UPoly<F> mulmod(const UPoly<F>& a, const UPoly<F>& b, const UPoly<F>& m) {
    return (a * b) % m;
}

template <class F>
UPoly<F> powmod(UPoly<F> base, BigInt e, const UPoly<F>& m) {
    const F& f = m.field();
    UPoly<F> r = UPoly<F>::constant(f, f.one()) % m;
    base = base % m;
    while (e > 0) {
        if ((e & 1) != 0) r = mulmod(r, base, m);
        e >>= 1;
        if (e > 0) base = mulmod(base, base, m);
    }
    return r;
}

template <class F>
UPoly<F> pow(UPoly<F> base, unsigned e) {
    const F& f = base.field();
    UPoly<F> r = UPoly<F>::constant(f, f.one());
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

/// Polynomial composition a(b(x)).
template <class F>
UPoly<F> compose(const UPoly<F>& a, const UPoly<F>& b) {
    const F& f = b.field();
    UPoly<F> r(f);
    for (std::size_t i = a.coeffs().size(); i-- > 0;) r = r * b + UPoly<F>::constant(f, a.coeffs()[i]);
    return r;
}

template <class F>
struct Factor {
    UPoly<F> poly;  // monic irreducible
    int multiplicity = 1;
};

namespace detail {

template <class F>
std::vector<std::pair<UPoly<F>, int>> squarefree_decomposition(const UPoly<F>& f0) {
    const F& f = f0.field();
    const unsigned p = f.characteristic();
    std::vector<std::pair<UPoly<F>, int>> out;
    UPoly<F> fm = f0.monic();
    if (fm.deg() <= 0) return out;
    UPoly<F> d = fm.derivative();
    if (d.is_zero()) {
        for (auto& [g, m] : squarefree_decomposition(fm.pth_root())) out.emplace_back(g, m * static_cast<int>(p));
        return out;
    }
    UPoly<F> c = gcd(fm, d);
    UPoly<F> w = exact_div(fm, c);
    int i = 1;
    while (w.deg() > 0) {
        UPoly<F> y = gcd(w, c);
        UPoly<F> fac = exact_div(w, y);
        if (fac.deg() > 0) out.emplace_back(fac.monic(), i);
        w = y;
        c = exact_div(c, y);
        ++i;
    }
    if (c.deg() > 0) {
        for (auto& [g, m] : squarefree_decomposition(c.pth_root())) out.emplace_back(g, m * static_cast<int>(p));
    }
    return out;
}

/// Pairs (product of all irreducible factors of degree d, d) for a monic squarefree input.
template <class F>
std::vector<std::pair<UPoly<F>, int>> distinct_degree(UPoly<F> g) {
    const F& f = g.field();
    std::vector<std::pair<UPoly<F>, int>> out;
    const UPoly<F> x = UPoly<F>::x(f);
    UPoly<F> h = x % g;
    int d = 0;
    while (g.deg() >= 2 * (d + 1)) {
        ++d;
        h = powmod(h, f.order(), g);
        UPoly<F> t = gcd(g, h - x);
        if (t.deg() > 0) {
            out.emplace_back(t, d);
            g = exact_div(g, t);
            h = h % g;
        }
    }
    if (g.deg() > 0) out.emplace_back(g.monic(), g.deg());
    return out;
}

template <class F>
void equal_degree(const UPoly<F>& g, int d, std::mt19937_64& rng, std::vector<UPoly<F>>& out) {
    if (g.deg() == d) {
        out.push_back(g.monic());
        return;
    }
    const F& f = g.field();
    const unsigned p = f.characteristic();
    BigInt qd = 1;
    for (int i = 0; i < d; ++i) qd *= f.order();
    while (true) {
        std::vector<typename F::Elem> c;
        for (int i = 0; i < g.deg(); ++i) c.push_back(f.random(rng));
        UPoly<F> a(f, c);
        if (a.deg() <= 0) continue;
        UPoly<F> b(f);
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(k d - 1)), where q^d = 2^(k d)
            unsigned kd = 0;
            for (BigInt t = qd; t > 1; t >>= 1) ++kd;
            UPoly<F> s = a % g, acc = a % g;
            for (unsigned i = 1; i < kd; ++i) {
                s = mulmod(s, s, g);
                acc = acc + s;
            }
            b = acc;
        } else {
            b = powmod(a, (qd - 1) / 2, g) - UPoly<F>::constant(f, f.one());
        }
        UPoly<F> t = gcd(g, b);
        if (t.deg() > 0 && t.deg() < g.deg()) {
            equal_degree(t, d, rng, out);
            equal_degree(exact_div(g, t), d, rng, out);
            return;
        }
    }
}

}  // namespace detail

/// Complete factorization into monic irreducibles, sorted by (degree, coefficients).
template <class F>
std::vector<Factor<F>> factor_univariate(const UPoly<F>& a, std::uint64_t seed = 0x6b756d6d6572ULL) {
    if (a.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
    std::mt19937_64 rng(seed);
    std::map<UPoly<F>, int> acc;
    for (auto& [sq, m] : detail::squarefree_decomposition(a)) {
        for (auto& [part, d] : detail::distinct_degree(sq)) {
            std::vector<UPoly<F>> irr;
            detail::equal_degree(part, d, rng, irr);
            for (auto& g : irr) acc[g] += m;
        }
    }
    std::vector<Factor<F>> out;
    for (auto& [g, m] : acc) out.push_back({g, m});
    return out;
}

template <class F>
bool is_irreducible(const UPoly<F>& a) {
    if (a.deg() <= 0) return false;
    auto fs = factor_univariate(a);
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

/// K = F[z]/(phi) for a monic irreducible phi.
template <class F>
class Ext {
public:
    using Base = F;
    using Elem = std::vector<typename F::Elem>;

    Ext(const F& base, UPoly<F> phi) : base_(&base), phi_(phi.monic()), d_(static_cast<std::size_t>(phi.deg())) {
        if (phi_.deg() < 1) throw std::invalid_argument("extension modulus must have positive degree");
        q_ = 1;
        for (std::size_t i = 0; i < d_; ++i) q_ *= base.order();
    }

    const F& base() const { return *base_; }
    const UPoly<F>& modulus() const { return phi_; }
    std::size_t degree() const { return d_; }
    unsigned characteristic() const { return base_->characteristic(); }
    BigInt order() const { return q_; }

    Elem zero() const { return Elem(d_, base_->zero()); }
    Elem one() const {
        Elem e = zero();
        e[0] = base_->one();
        return e;
    }
    Elem gen() const { return reduce(UPoly<F>::x(*base_)); }
    Elem embed(const typename F::Elem& a) const {
        Elem e = zero();
        e[0] = a;
        return e;
    }
    bool is_zero(const Elem& a) const {
        for (const auto& c : a)
            if (!base_->is_zero(c)) return false;
        return true;
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem r(d_);
        for (std::size_t i = 0; i < d_; ++i) r[i] = base_->add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r(d_);
        for (std::size_t i = 0; i < d_; ++i) r[i] = base_->sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r(d_);
        for (std::size_t i = 0; i < d_; ++i) r[i] = base_->neg(a[i]);
        return r;
    }
    Elem mul(const Elem& a, const Elem& b) const { return reduce(UPoly<F>(*base_, a) * UPoly<F>(*base_, b)); }
    Elem inv(const Elem& a) const {
        if (is_zero(a)) throw std::domain_error("division by zero in extension field");
        auto [g, s, t] = ext_gcd(UPoly<F>(*base_, a), phi_);
        (void)t;
        return reduce(s);
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, BigInt n) const {
        Elem r = one();
        while (n > 0) {
            if ((n & 1) != 0) r = mul(r, a);
            n >>= 1;
            if (n > 0) a = mul(a, a);
        }
        return r;
    }
    Elem frob_root(const Elem& a) const { return pow(a, q_ / characteristic()); }
    Elem from_int(long long k) const { return embed(base_->from_int(k)); }
    Elem random(std::mt19937_64& rng) const {
        Elem r(d_);
        for (auto& c : r) c = base_->random(rng);
        return r;
    }
    std::string str(const Elem& a) const {
        std::string s = "(";
        for (std::size_t i = 0; i < d_; ++i) s += (i ? "," : "") + base_->str(a[i]);
        return s + ")";
    }

    Elem reduce(const UPoly<F>& p) const {
        UPoly<F> r = p % phi_;
        Elem e = zero();
        for (std::size_t i = 0; i < r.coeffs().size(); ++i) e[i] = r.coeffs()[i];
        return e;
    }

private:
    const F* base_;
    UPoly<F> phi_;
    std::size_t d_;
    BigInt q_;
};

}  // namespace kummerlab
