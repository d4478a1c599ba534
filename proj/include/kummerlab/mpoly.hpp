// Sparse multivariate polynomials, resultants, dense linear algebra over a field type.
#pragma once

#include "kummerlab/upoly.hpp"

#include <map>
#include <optional>

namespace kummerlab {

using Mono = std::vector<unsigned>;

template <class F>
class MPoly {
public:
    using Elem = typename F::Elem;
    using Terms = std::map<Mono, Elem>;

    MPoly() = default;
    MPoly(const F& f, std::size_t nvars) : f_(&f), n_(nvars) {}

    static MPoly constant(const F& f, std::size_t n, const Elem& a) {
        MPoly p(f, n);
        p.add_term(Mono(n, 0), a);
        return p;
    }
    static MPoly var(const F& f, std::size_t n, std::size_t i, unsigned e = 1) {
        Mono m(n, 0);
        m[i] = e;
        MPoly p(f, n);
        p.add_term(m, f.one());
        return p;
    }
    static MPoly monomial(const F& f, const Mono& m, const Elem& a) {
        MPoly p(f, m.size());
        p.add_term(m, a);
        return p;
    }

    const F& field() const { return *f_; }
    std::size_t nvars() const { return n_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    Elem coeff(const Mono& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? f_->zero() : it->second;
    }
    void add_term(const Mono& m, const Elem& a) {
        if (m.size() != n_) throw std::invalid_argument("monomial arity mismatch");
        if (f_->is_zero(a)) return;
        auto [it, fresh] = t_.emplace(m, a);
        if (!fresh) {
            it->second = f_->add(it->second, a);
            if (f_->is_zero(it->second)) t_.erase(it);
        }
    }
    void set_term(const Mono& m, const Elem& a) {
        t_.erase(m);
        add_term(m, a);
    }

    MPoly operator+(const MPoly& o) const {
        MPoly r = *this;
        for (const auto& [m, a] : o.t_) r.add_term(m, a);
        return r;
    }
    MPoly operator-(const MPoly& o) const {
        MPoly r = *this;
        for (const auto& [m, a] : o.t_) r.add_term(m, f_->neg(a));
        return r;
    }
    MPoly operator*(const MPoly& o) const {
        MPoly r(*f_, n_);
        Mono s(n_);
        for (const auto& [m1, a1] : t_)
            for (const auto& [m2, a2] : o.t_) {
                for (std::size_t i = 0; i < n_; ++i) s[i] = m1[i] + m2[i];
                r.add_term(s, f_->mul(a1, a2));
            }
        return r;
    }
    MPoly scale(const Elem& a) const {
        MPoly r(*f_, n_);
        for (const auto& [m, c] : t_) r.add_term(m, f_->mul(a, c));
        return r;
    }
    bool operator==(const MPoly& o) const { return t_ == o.t_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    unsigned degree_in(std::size_t v) const {
        unsigned d = 0;
        for (const auto& [m, a] : t_) d = std::max(d, m[v]);
        return d;
    }
    unsigned total_degree() const {
        unsigned d = 0;
        for (const auto& [m, a] : t_) {
            unsigned s = 0;
            for (unsigned e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    /// Coefficient of v^k, still as a polynomial in all variables (with v absent).
    MPoly coeff_in(std::size_t v, unsigned k) const {
        MPoly r(*f_, n_);
        for (const auto& [m, a] : t_)
            if (m[v] == k) {
                Mono mm = m;
                mm[v] = 0;
                r.add_term(mm, a);
            }
        return r;
    }

    MPoly partial(std::size_t v) const {
        MPoly r(*f_, n_);
        for (const auto& [m, a] : t_) {
            if (m[v] == 0) continue;
            Mono mm = m;
            mm[v] -= 1;
            r.add_term(mm, f_->mul(f_->from_int(m[v]), a));
        }
        return r;
    }

    Elem eval(const std::vector<Elem>& pt) const {
        Elem r = f_->zero();
        for (const auto& [m, a] : t_) {
            Elem t = a;
            for (std::size_t i = 0; i < n_; ++i)
                if (m[i]) t = f_->mul(t, f_->pow(pt[i], m[i]));
            r = f_->add(r, t);
        }
        return r;
    }

    /// Simultaneous substitution of every variable by a polynomial (possibly in another ring arity).
    MPoly substitute(const std::vector<MPoly>& images) const {
        if (images.size() != n_) throw std::invalid_argument("substitution arity mismatch");
        const std::size_t n2 = images.empty() ? 0 : images[0].n_;
        MPoly r(*f_, n2);
        std::vector<std::vector<MPoly>> powers(n_);
        auto power = [&](std::size_t i, unsigned e) -> const MPoly& {
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(MPoly::constant(*f_, n2, f_->one()));
            while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
            return pw[e];
        };
        for (const auto& [m, a] : t_) {
            MPoly t = MPoly::constant(*f_, n2, a);
            for (std::size_t i = 0; i < n_; ++i)
                if (m[i]) t = t * power(i, m[i]);
            r = r + t;
        }
        return r;
    }

    /// Coefficientwise p-th root of the field coefficients, exponents unchanged.
    MPoly coeff_root() const {
        MPoly r(*f_, n_);
        for (const auto& [m, a] : t_) r.add_term(m, f_->frob_root(a));
        return r;
    }

    /// Raise every coefficient to the p-th power, exponents unchanged.
    MPoly coeff_frob() const {
        MPoly r(*f_, n_);
        for (const auto& [m, a] : t_) r.add_term(m, f_->pow(a, f_->characteristic()));
        return r;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const auto& [m, a] = *it;
            if (!s.empty()) s += " + ";
            bool unit = a == f_->one();
            bool constant = std::all_of(m.begin(), m.end(), [](unsigned e) { return e == 0; });
            if (!unit || constant) s += f_->str(a);
            bool first = unit;
            for (std::size_t i = 0; i < n_; ++i) {
                if (!m[i]) continue;
                if (!first) s += "*";
                first = false;
                s += names[i];
                if (m[i] > 1) s += "^" + std::to_string(m[i]);
            }
        }
        return s;
    }

private:
    const F* f_ = nullptr;
    std::size_t n_ = 0;
    Terms t_;
};

/// Bivariate view: coefficients of `var` as univariate polynomials in the other variable.
template <class F>
std::vector<UPoly<F>> as_upoly_coeffs(const MPoly<F>& p, std::size_t var) {
    if (p.nvars() != 2) throw std::invalid_argument("bivariate polynomial expected");
    const std::size_t other = 1 - var;
    const F& f = p.field();
    std::vector<std::vector<typename F::Elem>> raw(p.degree_in(var) + 1);
    for (const auto& [m, a] : p.terms()) {
        auto& row = raw[m[var]];
        if (row.size() <= m[other]) row.resize(m[other] + 1, f.zero());
        row[m[other]] = f.add(row[m[other]], a);
    }
    std::vector<UPoly<F>> out;
    for (auto& r : raw) out.emplace_back(f, r);
    return out;
}

/// Univariate polynomial in `var` with the other variable specialised to `val`.
template <class F>
UPoly<F> specialise(const MPoly<F>& p, std::size_t var, const typename F::Elem& val) {
    const F& f = p.field();
    std::vector<typename F::Elem> c(p.degree_in(var) + 1, f.zero());
    for (const auto& [m, a] : p.terms()) {
        typename F::Elem t = f.mul(a, f.pow(val, m[1 - var]));
        c[m[var]] = f.add(c[m[var]], t);
    }
    return UPoly<F>(f, c);
}

/// Determinant of a square matrix over the polynomial ring F[t] by fraction-free elimination.
template <class F>
UPoly<F> bareiss_det(std::vector<std::vector<UPoly<F>>> a, const F& f) {
    const std::size_t n = a.size();
    if (n == 0) return UPoly<F>::constant(f, f.one());
    UPoly<F> prev = UPoly<F>::constant(f, f.one());
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k].is_zero()) ++piv;
            if (piv == n) return UPoly<F>(f);
            std::swap(a[k], a[piv]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    UPoly<F> d = a[n - 1][n - 1];
    if (negate) d = UPoly<F>(f) - d;
    return d;
}

/// Res_var(p, q) as a polynomial in the remaining variable of a bivariate ring.
template <class F>
UPoly<F> resultant(const MPoly<F>& p, const MPoly<F>& q, std::size_t var) {
    const F& f = p.field();
    auto a = as_upoly_coeffs(p, var);
    auto b = as_upoly_coeffs(q, var);
    if (p.is_zero() || q.is_zero()) return UPoly<F>(f);
    const std::size_t m = a.size() - 1, n = b.size() - 1;
    if (m == 0 && n == 0) return UPoly<F>::constant(f, f.one());
    if (m == 0) return pow(a[0], static_cast<unsigned>(n));
    if (n == 0) return pow(b[0], static_cast<unsigned>(m));
    const std::size_t s = m + n;
    std::vector<std::vector<UPoly<F>>> syl(s, std::vector<UPoly<F>>(s, UPoly<F>(f)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i <= m; ++i) syl[r][r + i] = a[m - i];
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i <= n; ++i) syl[n + r][r + i] = b[n - i];
    return bareiss_det(std::move(syl), f);
}

/// Gcd of the coefficients in `var`, a univariate polynomial in the other variable.
template <class F>
UPoly<F> content_in(const MPoly<F>& p, std::size_t var) {
    UPoly<F> g(p.field());
    for (const auto& c : as_upoly_coeffs(p, var)) g = gcd(g, c);
    return g;
}

/// Coprimality of two nonzero bivariate polynomials.
template <class F>
bool coprime(const MPoly<F>& p, const MPoly<F>& q) {
    if (p.is_zero() || q.is_zero()) return false;
    const std::size_t var = 1;
    if (p.degree_in(var) > 0 && q.degree_in(var) > 0 && resultant(p, q, var).is_zero()) return false;
    return gcd(content_in(p, var), content_in(q, var)).deg() == 0;
}

// ---------------------------------------------------------------------------------------------
// Multivariate gcd by recursive primitive remainder sequences.

/// Scale so that the lexicographically leading coefficient is 1.
template <class F>
MPoly<F> normalize_lead(const MPoly<F>& p) {
    if (p.is_zero()) return p;
    return p.scale(p.field().inv(p.terms().rbegin()->second));
}

/// Quotient a / b, or nullopt when b does not divide a.
template <class F>
std::optional<MPoly<F>> try_divide(const MPoly<F>& a, const MPoly<F>& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
    const F& f = b.field();
    const std::size_t n = b.nvars();
    const auto& [lm, lc] = *b.terms().rbegin();
    const auto lci = f.inv(lc);
    MPoly<F> q(f, n), r = a;
    while (!r.is_zero()) {
        const auto [rm, rc] = *r.terms().rbegin();
        Mono d(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rm[i] < lm[i]) return std::nullopt;
            d[i] = rm[i] - lm[i];
        }
        MPoly<F> t = MPoly<F>::monomial(f, d, f.mul(rc, lci));
        q = q + t;
        r = r - t * b;
    }
    return q;
}

template <class F>
MPoly<F> divide_exact(const MPoly<F>& a, const MPoly<F>& b) {
    auto q = try_divide(a, b);
    if (!q) throw std::logic_error("inexact multivariate division");
    return *q;
}

template <class F>
MPoly<F> mgcd(const MPoly<F>& a, const MPoly<F>& b);

namespace detail {

template <class F>
int main_variable(const MPoly<F>& a, const MPoly<F>& b) {
    for (std::size_t v = a.nvars(); v-- > 0;)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return static_cast<int>(v);
    return -1;
}

template <class F>
MPoly<F> content(const MPoly<F>& p, std::size_t v) {
    MPoly<F> g(p.field(), p.nvars());
    for (unsigned k = 0; k <= p.degree_in(v); ++k) {
        MPoly<F> c = p.coeff_in(v, k);
        if (!c.is_zero()) g = mgcd(g, c);
    }
    return g;
}

template <class F>
MPoly<F> primitive_part(const MPoly<F>& p, std::size_t v) {
    if (p.is_zero()) return p;
    return divide_exact(p, content(p, v));
}

template <class F>
MPoly<F> pseudo_remainder(MPoly<F> a, const MPoly<F>& b, std::size_t v) {
    const unsigned db = b.degree_in(v);
    const MPoly<F> lb = b.coeff_in(v, db);
    while (!a.is_zero() && a.degree_in(v) >= db) {
        const unsigned da = a.degree_in(v);
        MPoly<F> la = a.coeff_in(v, da);
        a = lb * a - la * MPoly<F>::var(a.field(), a.nvars(), v, da - db) * b;
    }
    return a;
}

}  // namespace detail

/// Greatest common divisor with lexicographically leading coefficient 1.
template <class F>
MPoly<F> mgcd(const MPoly<F>& a, const MPoly<F>& b) {
    if (a.is_zero()) return normalize_lead(b);
    if (b.is_zero()) return normalize_lead(a);
    const int mv = detail::main_variable(a, b);
    if (mv < 0) return MPoly<F>::constant(a.field(), a.nvars(), a.field().one());
    const auto v = static_cast<std::size_t>(mv);
    MPoly<F> ca = detail::content(a, v), cb = detail::content(b, v);
    MPoly<F> c = mgcd(ca, cb);
    MPoly<F> pa = divide_exact(a, ca), pb = divide_exact(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (pb.degree_in(v) > 0) {
        MPoly<F> r = detail::pseudo_remainder(pa, pb, v);
        if (r.is_zero()) break;
        pa = pb;
        pb = detail::primitive_part(r, v);
    }
    if (pb.degree_in(v) == 0) return normalize_lead(c);
    return normalize_lead(c * detail::primitive_part(pb, v));
}

// ---------------------------------------------------------------------------------------------
// Linear algebra over a field type.

template <class F>
using FMatrix = std::vector<std::vector<typename F::Elem>>;

/// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<std::size_t> rref(const F& f, FMatrix<F>& a) {
    std::vector<std::size_t> piv;
    if (a.empty()) return piv;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && f.is_zero(a[p][c])) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        auto li = f.inv(a[r][c]);
        for (auto& x : a[r]) x = f.mul(x, li);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || f.is_zero(a[i][c])) continue;
            auto s = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(s, a[r][j]));
        }
        piv.push_back(c);
        ++r;
    }
    a.resize(r);
    return piv;
}

template <class F>
std::size_t rank(const F& f, FMatrix<F> a) {
    return rref(f, a).size();
}

/// Basis of {v : A v = 0}, where A has `cols` columns.
template <class F>
FMatrix<F> kernel(const F& f, FMatrix<F> a, std::size_t cols) {
    auto piv = rref(f, a);
    std::vector<bool> is_piv(cols, false);
    for (auto c : piv) is_piv[c] = true;
    FMatrix<F> out;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_piv[free]) continue;
        std::vector<typename F::Elem> v(cols, f.zero());
        v[free] = f.one();
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = f.neg(a[r][free]);
        out.push_back(v);
    }
    return out;
}

}  // namespace kummerlab
