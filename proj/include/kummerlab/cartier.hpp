// Cartier operator on w^p = H(x, y) and the Z-filtration of a finite monomial span.
// Variable 0 is x; variable 1 is y, or t for the quasi-elliptic family.
#pragma once

#include "kummerlab/mpoly.hpp"

#include <set>

namespace kummerlab {

/// (sum_k coeff[k] w^k) * eta_0, with coeff.size() == p.
template <class F>
struct FormElement {
    std::vector<MPoly<F>> coeff;

    bool is_zero() const {
        return std::all_of(coeff.begin(), coeff.end(), [](const MPoly<F>& c) { return c.is_zero(); });
    }
    bool operator==(const FormElement& o) const { return coeff == o.coeff; }
};

template <class F>
std::pair<MPoly<F>, MPoly<F>> partials(const MPoly<F>& f) {
    return {f.partial(0), f.partial(1)};
}

/// g with g^p = f for f in k[x^p, y^p]; p is the field characteristic.
template <class F>
MPoly<F> root_poly(const MPoly<F>& f) {
    const F& k = f.field();
    const unsigned p = k.characteristic();
    MPoly<F> r(k, f.nvars());
    for (const auto& [m, a] : f.terms()) {
        Mono e = m;
        for (auto& x : e) {
            if (x % p != 0) throw std::domain_error("not a square");
            x /= p;
        }
        r.add_term(e, k.frob_root(a));
    }
    return r;
}

template <class F>
MPoly<F> sqrt_poly(const MPoly<F>& f) {
    if (f.field().characteristic() != 2) throw std::domain_error("sqrt_poly needs characteristic 2");
    return root_poly(f);
}

/// p-th root of J_{(p-1,p-1)}: the part of J supported on x^{p-1} y^{p-1} k[x^p, y^p].
template <class F>
MPoly<F> corner_root(const MPoly<F>& j) {
    const F& k = j.field();
    const unsigned p = k.characteristic();
    MPoly<F> r(k, 2);
    for (const auto& [m, a] : j.terms()) {
        if (m[0] % p != p - 1 || m[1] % p != p - 1) continue;
        r.add_term(Mono{(m[0] + 1) / p - 1, (m[1] + 1) / p - 1}, k.frob_root(a));
    }
    return r;
}

template <class F>
bool in_pth_powers(const MPoly<F>& h) {
    const unsigned p = h.field().characteristic();
    for (const auto& [m, a] : h.terms())
        if (m[0] % p != 0 || m[1] % p != 0) return false;
    return true;
}

/// C(g eta_0) for the cover w^p = H.
template <class F>
FormElement<F> cartier_general(const MPoly<F>& g, const MPoly<F>& h) {
    const F& k = h.field();
    const unsigned p = k.characteristic();
    if (in_pth_powers(h)) throw std::domain_error("eta_0 undefined: H is a p-th power polynomial");
    FormElement<F> out{std::vector<MPoly<F>>(p, MPoly<F>(k, 2))};
    MPoly<F> gh = g;
    for (unsigned a = 0; a < p; ++a) {
        out.coeff[p - 1 - a] = corner_root(gh);
        if (a + 1 < p) gh = gh * h;
    }
    return out;
}

/// The same operator in characteristic 2, written out as w sqrt(g_xy) + sqrt((gH)_xy).
template <class F>
FormElement<F> cartier_p2(const MPoly<F>& g, const MPoly<F>& h) {
    if (h.field().characteristic() != 2) throw std::domain_error("cartier_p2 needs characteristic 2");
    if (in_pth_powers(h)) throw std::domain_error("eta_0 undefined: H is a square");
    auto dxy = [](const MPoly<F>& j) { return j.partial(0).partial(1); };
    return FormElement<F>{{sqrt_poly(dxy(g * h)), sqrt_poly(dxy(g))}};
}

/// dF as a multiple of eta_0: (F_x H_y - F_y H_x) eta_0.
template <class F>
FormElement<F> exact_form(const MPoly<F>& fpoly, const MPoly<F>& h) {
    const F& k = h.field();
    FormElement<F> out{std::vector<MPoly<F>>(k.characteristic(), MPoly<F>(k, 2))};
    out.coeff[0] = fpoly.partial(0) * h.partial(1) - fpoly.partial(1) * h.partial(0);
    return out;
}

template <class F>
UPoly<F> nth_derivative(UPoly<F> f, unsigned n) {
    for (unsigned i = 0; i < n; ++i) f = f.derivative();
    return f;
}

/// Both identities (d/dt)^{p-1}(F' F^a) = 0 for a <= p-2 and (d/dt)^{p-1}(F' F^{p-1}) = -F'^p.
template <class F>
bool check_p1_derivative(const UPoly<F>& fpoly) {
    const F& k = fpoly.field();
    const unsigned p = k.characteristic();
    const UPoly<F> ft = fpoly.derivative();
    UPoly<F> fa = UPoly<F>::constant(k, k.one());
    for (unsigned a = 0; a + 1 < p; ++a) {
        if (!nth_derivative(ft * fa, p - 1).is_zero()) return false;
        fa = fa * fpoly;
    }
    UPoly<F> lhs = nth_derivative(ft * fa, p - 1);
    UPoly<F> rhs = UPoly<F>(k) - pow(ft, p);
    return lhs == rhs;
}

// ---------------------------------------------------------------------------------------------
// f_ij table and the Z-filtration.

using Exponent = std::pair<unsigned, unsigned>;

/// f_ij = sum over i1+i2 = 2i+1, j1+j2 = 2j+1 of h_{i1 j1} g_{i2 j2}, for every (i,j) with f_ij != 0.
template <class F>
std::map<Exponent, typename F::Elem> f_ij_table(const MPoly<F>& g, const MPoly<F>& h) {
    const F& k = h.field();
    std::map<Exponent, typename F::Elem> out;
    for (const auto& [mh, a] : h.terms())
        for (const auto& [mg, b] : g.terms()) {
            unsigned si = mh[0] + mg[0], sj = mh[1] + mg[1];
            if (si % 2 == 0 || sj % 2 == 0) continue;
            Exponent e{(si - 1) / 2, (sj - 1) / 2};
            auto it = out.emplace(e, k.zero()).first;
            it->second = k.add(it->second, k.mul(a, b));
        }
    for (auto it = out.begin(); it != out.end();)
        it = k.is_zero(it->second) ? out.erase(it) : std::next(it);
    return out;
}

/// Basis vectors are coordinate rows over the ambient monomials followed by the w slot.
template <class F>
struct ZFiltration {
    std::vector<Exponent> monomials;
    std::vector<FMatrix<F>> bases;   // Z_0, Z_1, ..., Z_depth
    std::size_t out_of_span_terms = 0;  // distinct monomials of C(Z_1) outside the span

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> d;
        for (const auto& b : bases) d.push_back(b.size());
        return d;
    }
};

/**
 * Z_0 = span(monomials) eta_0 + k w eta_0; Z_1 drops the w slot; Z_{i+1} = {v in Z_1 : C(v) in Z_i}.
 * Components of C(v) outside the ambient span must vanish for v to qualify. With strict set,
 * any such component on Z_1 raises instead.
 */
template <class F>
ZFiltration<F> z_filtration(const MPoly<F>& h, const std::vector<Exponent>& monomials, std::size_t depth,
                            bool strict = false) {
    const F& k = h.field();
    if (k.characteristic() != 2) throw std::domain_error("z_filtration is implemented in characteristic 2");
    const std::size_t n = monomials.size(), dim0 = n + 1;
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[monomials[i]] = i;

    // Images C(m_k eta_0) split into in-span coordinates (w slot last) and outside terms.
    std::vector<std::vector<typename F::Elem>> image(n, std::vector<typename F::Elem>(dim0, k.zero()));
    std::set<Exponent> outside_keys;
    std::vector<std::map<Exponent, typename F::Elem>> outside(n);
    for (std::size_t c = 0; c < n; ++c) {
        auto [ex, ey] = monomials[c];
        FormElement<F> img = cartier_p2(MPoly<F>::monomial(k, Mono{ex, ey}, k.one()), h);
        for (const auto& [m, a] : img.coeff[0].terms()) {
            Exponent e{m[0], m[1]};
            auto it = index.find(e);
            if (it != index.end()) {
                image[c][it->second] = a;
            } else {
                outside[c][e] = a;
                outside_keys.insert(e);
            }
        }
        for (const auto& [m, a] : img.coeff[1].terms()) {
            if (m[0] == 0 && m[1] == 0) {
                image[c][n] = a;
            } else {
                outside[c][{1000 + m[0], m[1]}] = a;  // w * x^i y^j with (i,j) != 0
                outside_keys.insert({1000 + m[0], m[1]});
            }
        }
    }
    if (strict && !outside_keys.empty()) throw std::domain_error("span not Cartier-stable");

    ZFiltration<F> out;
    out.monomials = monomials;
    out.out_of_span_terms = outside_keys.size();
    FMatrix<F> z0;
    for (std::size_t i = 0; i < dim0; ++i) {
        std::vector<typename F::Elem> e(dim0, k.zero());
        e[i] = k.one();
        z0.push_back(e);
    }
    out.bases.push_back(z0);
    if (depth == 0) return out;
    FMatrix<F> z1(z0.begin(), z0.begin() + static_cast<std::ptrdiff_t>(n));
    out.bases.push_back(z1);

    for (std::size_t level = 2; level <= depth; ++level) {
        // Annihilator rows of the previous subspace inside the dim0-dimensional ambient.
        FMatrix<F> ann = kernel(k, out.bases.back(), dim0);
        // Unknowns d_c with c_c = d_c^2; C(sum c_c m_c) = sum d_c image[c].
        FMatrix<F> sys;
        for (const auto& row : ann) {
            std::vector<typename F::Elem> eq(n, k.zero());
            for (std::size_t c = 0; c < n; ++c) {
                auto s = k.zero();
                for (std::size_t i = 0; i < dim0; ++i) s = k.add(s, k.mul(row[i], image[c][i]));
                eq[c] = s;
            }
            sys.push_back(eq);
        }
        for (const auto& key : outside_keys) {
            std::vector<typename F::Elem> eq(n, k.zero());
            for (std::size_t c = 0; c < n; ++c) {
                auto it = outside[c].find(key);
                if (it != outside[c].end()) eq[c] = it->second;
            }
            sys.push_back(eq);
        }
        FMatrix<F> ker = sys.empty() ? FMatrix<F>{} : kernel(k, sys, n);
        if (sys.empty())
            for (std::size_t c = 0; c < n; ++c) {
                std::vector<typename F::Elem> e(n, k.zero());
                e[c] = k.one();
                ker.push_back(e);
            }
        FMatrix<F> next;
        for (auto& v : ker) {
            std::vector<typename F::Elem> row(dim0, k.zero());
            for (std::size_t c = 0; c < n; ++c) row[c] = k.mul(v[c], v[c]);
            next.push_back(row);
        }
        rref(k, next);
        out.bases.push_back(next);
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// gcd of odd-part coefficients versus gcd of partial derivatives.

template <class F>
struct GcdCheck {
    MPoly<F> g, g_prime;
    bool equal = false;
};

/// Write f = sum over i in {0,1}^n of f_i x^i with f_i in k[x_1^2, ..., x_n^2]; compare
/// gcd(f_i : i != 0) with gcd of all partial derivatives.
template <class F>
GcdCheck<F> divisorial_gcd_check(const MPoly<F>& f) {
    const F& k = f.field();
    if (k.characteristic() != 2) throw std::domain_error("divisorial_gcd_check needs characteristic 2");
    const std::size_t n = f.nvars();
    std::map<Mono, MPoly<F>> parts;
    for (const auto& [m, a] : f.terms()) {
        Mono parity(n), rest(n);
        for (std::size_t i = 0; i < n; ++i) {
            parity[i] = m[i] % 2;
            rest[i] = m[i] - parity[i];
        }
        auto it = parts.emplace(parity, MPoly<F>(k, n)).first;
        it->second.add_term(rest, a);
    }
    GcdCheck<F> out{MPoly<F>(k, n), MPoly<F>(k, n), false};
    bool any_partial = false;
    for (std::size_t i = 0; i < n; ++i) {
        MPoly<F> d = f.partial(i);
        if (d.is_zero()) continue;
        any_partial = true;
        out.g_prime = mgcd(out.g_prime, d);
    }
    if (!any_partial) throw std::domain_error("all partial derivatives vanish");
    for (const auto& [parity, c] : parts) {
        if (std::all_of(parity.begin(), parity.end(), [](unsigned e) { return e == 0; })) continue;
        out.g = mgcd(out.g, c);
    }
    out.equal = out.g == out.g_prime;
    return out;
}

}  // namespace kummerlab
