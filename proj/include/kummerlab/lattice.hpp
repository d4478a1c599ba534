// Integral symmetric bilinear forms.
#pragma once

#include "kummerlab/intmat.hpp"

#include <array>
#include <functional>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace kummerlab {

class Lattice {
public:
    Lattice() = default;
    explicit Lattice(IntMatrix gram, std::vector<std::string> labels = {})
        : gram_(std::move(gram)), labels_(std::move(labels)) {
        if (!gram_.is_symmetric()) throw std::invalid_argument("Gram matrix is not symmetric");
        if (!labels_.empty() && labels_.size() != gram_.rows())
            throw std::invalid_argument("label count does not match rank");
    }
    /// Rejects any non-integral entry.
    static Lattice from_rational(const RatMatrix& g, std::vector<std::string> labels = {}) {
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j)
                if (!is_integral(g(i, j))) throw std::domain_error("non-integral pairing in result");
        return Lattice(to_integer(g), std::move(labels));
    }

    std::size_t rank() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }
    const std::vector<std::string>& labels() const { return labels_; }

    bool is_even() const {
        for (std::size_t i = 0; i < rank(); ++i)
            if (gram_(i, i) % 2 != 0) return false;
        return true;
    }

    Rational pair(const RatVec& x, const RatVec& y) const {
        Rational s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0) continue;
            Rational t = 0;
            for (std::size_t j = 0; j < rank(); ++j)
                if (y[j] != 0) t += Rational(gram_(i, j)) * y[j];
            s += x[i] * t;
        }
        return s;
    }
    BigInt pair(const IntVec& x, const IntVec& y) const {
        BigInt s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < rank(); ++j)
                if (y[j] != 0) s += x[i] * gram_(i, j) * y[j];
        }
        return s;
    }
    Rational square(const RatVec& x) const { return pair(x, x); }

    /// Gram matrix of the sublattice spanned by the rows of b (coordinates in this basis).
    RatMatrix gram_of(const RatMatrix& b) const { return b * to_rational(gram_) * b.transpose(); }

private:
    IntMatrix gram_;
    std::vector<std::string> labels_;
};

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
    const std::size_t n = a.rank(), m = b.rank();
    IntMatrix g(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
    std::vector<std::string> lab;
    if (!a.labels().empty() && !b.labels().empty()) {
        lab = a.labels();
        lab.insert(lab.end(), b.labels().begin(), b.labels().end());
    }
    return Lattice(g, lab);
}

inline Lattice scaled_identity(std::size_t n, long d) {
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = d;
    return Lattice(g);
}

/// Cartan-type Gram (negative definite, roots of square -2) for A_n, D_n, E_n.
inline Lattice ade_lattice(char family, int n) {
    std::vector<std::pair<int, int>> edges;
    if (family == 'A') {
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    } else if (family == 'D') {
        if (n < 4) throw std::invalid_argument("D_n needs n >= 4");
        for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(n - 3, n - 1);
    } else if (family == 'E') {
        if (n < 6 || n > 8) throw std::invalid_argument("E_n needs 6 <= n <= 8");
        for (int i = 0; i + 2 < n; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(2, n - 1);
    } else {
        throw std::invalid_argument("unknown ADE family");
    }
    IntMatrix g(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g(i, i) = -2;
    for (auto [a, b] : edges) g(a, b) = g(b, a) = 1;
    return Lattice(g);
}

inline BigInt discriminant(const Lattice& l) {
    BigInt d = determinant(l.gram());
    if (d == 0) throw std::domain_error("degenerate lattice");
    return d;
}

/// Counts (positive, negative) squares by exact congruence diagonalisation.
inline std::pair<int, int> signature(const Lattice& l) {
    const std::size_t n = l.rank();
    RatMatrix a = to_rational(l.gram());
    int pos = 0, neg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t p = i;
        while (p < n && a(p, p) == 0) ++p;
        if (p == n) {
            std::size_t pj = n, pk = n;
            for (std::size_t j = i; j < n && pj == n; ++j)
                for (std::size_t k = j + 1; k < n; ++k)
                    if (a(j, k) != 0) {
                        pj = j;
                        pk = k;
                        break;
                    }
            if (pj == n) throw std::domain_error("degenerate lattice");
            for (std::size_t t = 0; t < n; ++t) a(pj, t) += a(pk, t);
            for (std::size_t t = 0; t < n; ++t) a(t, pj) += a(t, pk);
            p = pj;
        }
        a.swap_rows(i, p);
        a.swap_cols(i, p);
        Rational d = a(i, i);
        (d > 0 ? pos : neg)++;
        for (std::size_t r = i + 1; r < n; ++r) {
            if (a(r, i) == 0) continue;
            Rational f = a(r, i) / d;
            for (std::size_t c = i; c < n; ++c) a(r, c) -= f * a(i, c);
            for (std::size_t c = i; c < n; ++c) a(c, r) = a(r, c);
        }
    }
    return {pos, neg};
}

/// Membership of a rational vector (lattice coordinates) in the dual.
inline bool in_dual(const Lattice& l, const RatVec& x) {
    for (std::size_t i = 0; i < l.rank(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < l.rank(); ++j) s += Rational(l.gram()(i, j)) * x[j];
        if (!is_integral(s)) return false;
    }
    return true;
}

inline bool in_lattice(const RatVec& x) {
    return std::all_of(x.begin(), x.end(), [](const Rational& q) { return is_integral(q); });
}

inline RatVec reduce_mod_lattice(const RatVec& x) {
    RatVec r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = frac_part(x[i]);
    return r;
}

/// Quadratic value reduced into [0, 2).
inline Rational q_value(const Lattice& l, const RatVec& x) { return mod_rational(l.square(x), Rational(2)); }

struct DiscriminantGroup {
    std::vector<RatVec> generators;
    std::vector<BigInt> orders;
    std::vector<Rational> qvalues;

    BigInt order() const {
        BigInt o = 1;
        for (const auto& d : orders) o *= d;
        return o;
    }
    /// Exponent of 2 when the group is (Z/2)^a; -1 otherwise.
    int two_rank_if_elementary() const {
        for (const auto& d : orders)
            if (d != 2) return -1;
        return static_cast<int>(orders.size());
    }
};

namespace detail {
/// Canonical F_2 reduced echelon basis of classes x with 2x in L, encoded by 2x mod 2.
inline std::vector<RatVec> canonical_two_basis(const std::vector<RatVec>& gens, std::size_t n) {
    std::vector<std::vector<int>> rows;
    for (const auto& g : gens) {
        std::vector<int> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational t = frac_part(g[i]) * 2;
            r[i] = static_cast<int>(boost::multiprecision::numerator(t) % 2);
        }
        rows.push_back(r);
    }
    std::size_t rk = 0;
    for (std::size_t c = 0; c < n && rk < rows.size(); ++c) {
        std::size_t p = rk;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[rk], rows[p]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rk && rows[i][c])
                for (std::size_t k = 0; k < n; ++k) rows[i][k] ^= rows[rk][k];
        ++rk;
    }
    rows.resize(rk);
    std::vector<RatVec> out;
    for (const auto& r : rows) {
        RatVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = Rational(r[i], 2);
        out.push_back(v);
    }
    return out;
}
}  // namespace detail

inline DiscriminantGroup discriminant_group(const Lattice& l) {
    const std::size_t n = l.rank();
    discriminant(l);
    SmithResult s = smith(l.gram());
    DiscriminantGroup dg;
    std::vector<RatVec> gens;
    std::vector<BigInt> ords;
    for (std::size_t i = 0; i < n; ++i) {
        BigInt d = abs(s.diag[i]);
        if (d == 1) continue;
        RatVec x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = Rational(s.v(k, i), d);
        gens.push_back(reduce_mod_lattice(x));
        ords.push_back(d);
    }
    bool two_elem = std::all_of(ords.begin(), ords.end(), [](const BigInt& d) { return d == 2; });
    if (two_elem) {
        dg.generators = detail::canonical_two_basis(gens, n);
        dg.orders.assign(dg.generators.size(), BigInt(2));
    } else {
        std::vector<std::size_t> idx(gens.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (ords[a] != ords[b]) return ords[a] < ords[b];
            return gens[a] < gens[b];
        });
        for (auto i : idx) {
            dg.generators.push_back(gens[i]);
            dg.orders.push_back(ords[i]);
        }
    }
    for (const auto& g : dg.generators) dg.qvalues.push_back(q_value(l, g));
    return dg;
}

/// Order of the class of x (x in the dual) in L∨/L.
inline BigInt class_order(const RatVec& x) {
    BigInt o = 1;
    for (const auto& c : x) o = lcm_big(o, boost::multiprecision::denominator(c));
    return o;
}

struct TwoElementaryFlags {
    bool elementary = false;
    bool type2 = false;
};

/// Enumerates the whole discriminant group with incremental integer arithmetic.
inline TwoElementaryFlags is_two_elementary_type2(const Lattice& l) {
    if (!l.is_even()) throw std::invalid_argument("lattice is not even");
    DiscriminantGroup dg = discriminant_group(l);
    TwoElementaryFlags f;
    f.elementary = dg.two_rank_if_elementary() >= 0;
    const std::size_t k = dg.generators.size();
    if (dg.order() > (BigInt(1) << 20)) throw std::length_error("discriminant group too large to enumerate");
    std::vector<std::vector<Rational>> b(k, std::vector<Rational>(k));
    BigInt den = 1;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            b[i][j] = l.pair(dg.generators[i], dg.generators[j]);
            den = lcm_big(den, boost::multiprecision::denominator(b[i][j]));
        }
    const long long D = static_cast<long long>(den);
    const long long M = 2 * D;
    std::vector<std::vector<long long>> nb(k, std::vector<long long>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Rational t = b[i][j] * Rational(den);
            long long v = static_cast<long long>(boost::multiprecision::numerator(t) % M);
            nb[i][j] = (v + M) % M;
        }
    std::vector<long long> ord(k);
    for (std::size_t i = 0; i < k; ++i) ord[i] = static_cast<long long>(dg.orders[i]);
    bool ok = true;
    // Depth-first over digits; state = (q numerator mod 2D, pairing numerators with each generator mod 2D).
    std::vector<long long> pairing(k, 0);
    auto rec = [&](auto&& self, std::size_t lvl, long long q) -> void {
        if (!ok) return;
        if (lvl == k) {
            if (q % D != 0) ok = false;
            return;
        }
        std::vector<long long> saved = pairing;
        long long qq = q;
        for (long long a = 0; a < ord[lvl]; ++a) {
            self(self, lvl + 1, qq);
            // add generator lvl
            qq = ((qq + nb[lvl][lvl] + 2 * pairing[lvl]) % M + M) % M;
            for (std::size_t j = 0; j < k; ++j) pairing[j] = (pairing[j] + nb[lvl][j]) % M;
        }
        pairing = saved;
    };
    rec(rec, 0, 0);
    f.type2 = ok;
    return f;
}

// ---------------------------------------------------------------------------
// Roots of negative definite lattices.

namespace detail {

using BigMat = std::vector<IntVec>;

inline BigInt round_div(const BigInt& a, const BigInt& d) {  // nearest integer to a/d, d > 0
    return floor_div(2 * a + d, 2 * d);
}

/// Integral LLL (delta = 3/4) on a positive definite Gram matrix; rows of the result are the new basis.
inline BigMat lll_transform(const BigMat& g) {
    const std::size_t n = g.size();
    BigMat t(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) t[i][i] = 1;
    if (n < 2) return t;
    // d[i + 1] = d_i and lam[k][j] = lambda_kj in the 1-indexed integral formulation
    std::vector<BigInt> d(n + 1, 0);
    BigMat lam(n, IntVec(n, 0));
    auto gram_entry = [&](std::size_t k, std::size_t j) {  // <original b_k, current b_j>
        BigInt s = 0;
        for (std::size_t c = 0; c < n; ++c)
            if (t[j][c] != 0) s += g[k][c] * t[j][c];
        return s;
    };
    auto redi = [&](std::size_t k, std::size_t l) {
        if (abs(2 * lam[k][l]) <= d[l + 1]) return;
        BigInt q = round_div(lam[k][l], d[l + 1]);
        for (std::size_t c = 0; c < n; ++c) t[k][c] -= q * t[l][c];
        lam[k][l] -= q * d[l + 1];
        for (std::size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };
    std::size_t kmax = 0;
    d[0] = 1;
    d[1] = g[0][0];
    std::size_t k = 1;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 0; j <= k; ++j) {
                BigInt u = gram_entry(k, j);
                for (std::size_t i = 0; i < j; ++i) u = (d[i + 1] * u - lam[k][i] * lam[j][i]) / d[i];
                if (j < k) lam[k][j] = u;
                else d[k + 1] = u;
            }
            if (d[k + 1] == 0) throw std::domain_error("LLL input is not positive definite");
        }
        redi(k, k - 1);
        if (4 * d[k + 1] * d[k - 1] < 3 * d[k] * d[k] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
            std::swap(t[k], t[k - 1]);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            const BigInt l = lam[k][k - 1];
            const BigInt b = (d[k - 1] * d[k + 1] + l * l) / d[k];
            for (std::size_t i = k + 1; i <= kmax; ++i) {
                BigInt s = lam[i][k];
                lam[i][k] = (d[k + 1] * lam[i][k - 1] - l * s) / d[k];
                lam[i][k - 1] = (b * s + l * lam[i][k]) / d[k + 1];
            }
            d[k] = b;
            if (k > 1) --k;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) redi(k, l);
            ++k;
        }
    }
    return t;
}

inline BigMat congruent(const BigMat& t, const BigMat& g) {  // t g t^T
    const std::size_t n = t.size();
    BigMat tg(n, IntVec(n, 0)), r(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (t[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j) tg[i][j] += t[i][k] * g[k][j];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) r[i][j] += tg[i][k] * t[j][k];
    return r;
}

}  // namespace detail

/// Vectors of a definite form with |v^2| = 2, one per sign pair, first nonzero coordinate positive,
/// sorted lexicographically. Exact throughout: integral LLL, then Fincke-Pohst over the rationals.
inline std::vector<IntVec> short_vectors_norm2(const Lattice& l) {
    const std::size_t n = l.rank();
    if (n == 0) return {};
    auto [pos, neg] = signature(l);
    if (pos != 0 && neg != 0) throw std::domain_error("root enumeration requires definite lattice");
    const int sgn = neg > 0 ? -1 : 1;
    detail::BigMat g(n, IntVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g[i][j] = l.gram()(i, j) * sgn;
    const detail::BigMat t = detail::lll_transform(g);
    const detail::BigMat a = detail::congruent(t, g);
    // Q(x) = sum q_ii (x_i + sum_{j>i} q_ij x_j)^2
    std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q[i][j] = Rational(a[i][j]);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = k; j < n; ++j) q[k][j] -= q[k][i] * q[i][j];
    }
    std::vector<BigInt> x(n, 0);
    std::set<IntVec> found;
    auto rec = [&](auto&& self, std::size_t lvl, const Rational& remaining) -> void {
        Rational c = 0;
        for (std::size_t j = lvl + 1; j < n; ++j)
            if (x[j] != 0) c -= q[lvl][j] * x[j];
        // admissible values form an integer interval around c
        auto rest = [&](const BigInt& v) -> Rational {
            Rational dlt = Rational(v) - c;
            return remaining - q[lvl][lvl] * dlt * dlt;
        };
        const BigInt v0 = floor_div(boost::multiprecision::numerator(c), boost::multiprecision::denominator(c));
        auto visit = [&](const BigInt& v, const Rational& rem) {
            x[lvl] = v;
            if (lvl > 0) {
                self(self, lvl - 1, rem);
                return;
            }
            if (rem != 0) return;  // Q(x) = 2 exactly
            IntVec w(n, 0);
            for (std::size_t i = 0; i < n; ++i)
                if (x[i] != 0)
                    for (std::size_t j = 0; j < n; ++j) w[j] += x[i] * t[i][j];
            auto it = std::find_if(w.begin(), w.end(), [](const BigInt& z) { return z != 0; });
            if (it == w.end()) return;
            if (*it < 0)
                for (auto& z : w) z = -z;
            found.insert(w);
        };
        for (BigInt v = v0;; --v) {
            Rational r = rest(v);
            if (r < 0) break;
            visit(v, r);
        }
        for (BigInt v = v0 + 1;; ++v) {
            Rational r = rest(v);
            if (r < 0) break;
            visit(v, r);
        }
        x[lvl] = 0;
    };
    rec(rec, n - 1, Rational(2));
    return {found.begin(), found.end()};
}

/// Roots (v^2 = -2) of a negative definite lattice.
inline std::vector<IntVec> roots(const Lattice& l) {
    auto [pos, neg] = signature(l);
    if (pos != 0) throw std::domain_error("root enumeration requires definite lattice");
    (void)neg;
    return short_vectors_norm2(l);
}

// ---------------------------------------------------------------------------
// ADE classification.

struct AdeComponent {
    char family = 'A';
    int rank = 0;
    std::size_t root_count = 0;  // counts both signs
    std::string symbol() const { return std::string(1, family) + std::to_string(rank); }
    bool operator<(const AdeComponent& o) const {
        if (family != o.family) return family < o.family;
        return rank < o.rank;
    }
    bool operator==(const AdeComponent& o) const { return family == o.family && rank == o.rank; }
};

inline std::size_t ade_root_count(char f, int n) {
    switch (f) {
        case 'A': return static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1);
        case 'D': return 2 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1);
        case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
    }
    return 0;
}

/// Multiset of components, sorted (A before D before E, then by rank).
inline std::vector<AdeComponent> ade_type(const Lattice& l, const std::vector<IntVec>& root_pairs) {
    std::vector<IntVec> rs;
    for (const auto& r : root_pairs) {
        if (l.pair(r, r) != -2) throw std::invalid_argument("not a root");
        rs.push_back(r);
        IntVec m = r;
        for (auto& z : m) z = -z;
        rs.push_back(m);
    }
    const std::size_t N = rs.size(), n = l.rank();
    // Gram-times-root cache to speed up pairings.
    std::vector<IntVec> gr(N, IntVec(n));
    for (std::size_t a = 0; a < N; a += 2) {
        for (std::size_t i = 0; i < n; ++i) {
            BigInt s = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (rs[a][j] != 0) s += l.gram()(i, j) * rs[a][j];
            gr[a][i] = s;
            gr[a + 1][i] = -s;
        }
    }
    auto pr = [&](std::size_t a, std::size_t b) {
        BigInt s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (rs[b][i] != 0) s += gr[a][i] * rs[b][i];
        return s;
    };
    // Union-find over sign pairs.
    const std::size_t P = root_pairs.size();
    std::vector<std::size_t> parent(P);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t a = 0; a < P; ++a)
        for (std::size_t b = a + 1; b < P; ++b)
            if (pr(2 * a, 2 * b) != 0) parent[find(a)] = find(b);
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t a = 0; a < P; ++a) comps[find(a)].push_back(a);

    // Generic functional to split positive roots.
    std::vector<long long> w(n);
    std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
    for (std::size_t i = 0; i < n; ++i) {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        w[i] = static_cast<long long>(seed % 1000003ULL) + 1;
    }
    std::vector<AdeComponent> out;
    for (auto& [rep, members] : comps) {
        (void)rep;
        std::vector<IntVec> pos;
        for (auto a : members) {
            BigInt f = 0;
            for (std::size_t i = 0; i < n; ++i) f += rs[2 * a][i] * w[i];
            if (f == 0) throw std::runtime_error("degenerate splitting functional");
            pos.push_back(f > 0 ? rs[2 * a] : rs[2 * a + 1]);
        }
        std::set<IntVec> posset(pos.begin(), pos.end());
        std::vector<IntVec> simple;
        for (const auto& r : pos) {
            bool decomposable = false;
            for (const auto& s : pos) {
                IntVec d(n);
                for (std::size_t i = 0; i < n; ++i) d[i] = r[i] - s[i];
                if (posset.count(d)) {
                    decomposable = true;
                    break;
                }
            }
            if (!decomposable) simple.push_back(r);
        }
        const std::size_t k = simple.size();
        std::vector<std::vector<int>> adj(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                BigInt p = l.pair(simple[i], simple[j]);
                if (p == 0) continue;
                if (p != 1) throw std::runtime_error("not a root system of ADE type");
                adj[i].push_back(static_cast<int>(j));
                adj[j].push_back(static_cast<int>(i));
            }
        std::size_t edges = 0;
        for (auto& v : adj) edges += v.size();
        edges /= 2;
        if (edges + 1 != k) throw std::runtime_error("not a root system of ADE type");
        AdeComponent c;
        c.rank = static_cast<int>(k);
        c.root_count = 2 * members.size();
        int branch = -1;
        for (std::size_t i = 0; i < k; ++i) {
            if (adj[i].size() > 3) throw std::runtime_error("not a root system of ADE type");
            if (adj[i].size() == 3) {
                if (branch >= 0) throw std::runtime_error("not a root system of ADE type");
                branch = static_cast<int>(i);
            }
        }
        if (branch < 0) {
            c.family = 'A';
        } else {
            std::vector<int> arms;
            for (int nb : adj[branch]) {
                int len = 1, prev = branch, cur = nb;
                while (true) {
                    int next = -1;
                    for (int z : adj[cur])
                        if (z != prev) next = z;
                    if (next < 0) break;
                    prev = cur;
                    cur = next;
                    ++len;
                }
                arms.push_back(len);
            }
            std::sort(arms.begin(), arms.end());
            if (arms[0] == 1 && arms[1] == 1) {
                c.family = 'D';
            } else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
                c.family = 'E';
            } else {
                throw std::runtime_error("not a root system of ADE type");
            }
        }
        if (ade_root_count(c.family, c.rank) != c.root_count)
            throw std::runtime_error("not a root system of ADE type");
        out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string ade_string(const std::vector<AdeComponent>& comps) {
    std::map<std::string, int> cnt;
    std::vector<std::string> order;
    for (const auto& c : comps) {
        if (!cnt.count(c.symbol())) order.push_back(c.symbol());
        ++cnt[c.symbol()];
    }
    std::string s;
    for (const auto& sym : order) {
        if (!s.empty()) s += "+";
        s += std::to_string(cnt[sym]) + sym;
    }
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------

struct SaturationResult {
    IntMatrix basis;  // rows, in coordinates of the ambient lattice
    BigInt index = 1;
};

/// Saturation of the row span of m inside Z^n (the ambient lattice's coordinates).
inline SaturationResult saturation(const IntMatrix& m) {
    const std::size_t n = m.cols();
    SaturationResult res;
    IntMatrix gens = row_lattice_basis(m);
    IntMatrix k = integer_kernel(gens);
    if (k.rows() == 0) {
        res.basis = IntMatrix::identity(n);
    } else {
        res.basis = integer_kernel(k);
    }
    RatMatrix sb = to_rational(res.basis);
    IntMatrix coords(0, res.basis.rows());
    for (std::size_t i = 0; i < gens.rows(); ++i) {
        RatVec v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = Rational(gens(i, j));
        RatVec c = solve_in_rowspace(sb, v);
        IntVec ci(c.size());
        for (std::size_t j = 0; j < c.size(); ++j) ci[j] = boost::multiprecision::numerator(c[j]);
        coords.append_row(ci);
    }
    SmithResult s = smith(coords);
    BigInt idx = 1;
    for (const auto& d : s.diag)
        if (d != 0) idx *= abs(d);
    res.index = idx;
    return res;
}

inline SaturationResult saturation(const RatMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!is_integral(m(i, j))) throw std::domain_error("generators not in L");
    return saturation(to_integer(m));
}

inline IntVec reflect(const Lattice& l, const IntVec& v, const IntVec& x) {
    if (l.pair(v, v) != -2) throw std::invalid_argument("v is not a root");
    BigInt c = l.pair(x, v);
    IntVec r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += c * v[i];
    return r;
}

/// Orthogonal complement of the row span of `sub` (coordinates in l), as a basis in l's coordinates.
inline IntMatrix orthogonal_complement(const Lattice& l, const IntMatrix& sub) {
    IntMatrix a = sub * l.gram();
    return integer_kernel(a);
}

inline Lattice sublattice(const Lattice& l, const IntMatrix& basis) {
    return Lattice(basis * l.gram() * basis.transpose());
}

struct Overlattice {
    Lattice lattice;
    RatMatrix basis;  // rows: new basis vectors in the old coordinates
    BigInt index = 1;
};

/// Overlattice of l generated by l and the extra rational vectors (old coordinates).
inline Overlattice overlattice(const Lattice& l, const std::vector<RatVec>& extra) {
    const std::size_t n = l.rank();
    BigInt d = 1;
    for (const auto& v : extra)
        for (const auto& c : v) d = lcm_big(d, boost::multiprecision::denominator(c));
    IntMatrix gens(0, n);
    for (std::size_t i = 0; i < n; ++i) {
        IntVec r(n, 0);
        r[i] = d;
        gens.append_row(r);
    }
    for (const auto& v : extra) {
        IntVec r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = boost::multiprecision::numerator(v[j] * Rational(d));
        gens.append_row(r);
    }
    IntMatrix h = row_lattice_basis(gens);
    Overlattice o;
    o.basis = RatMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) o.basis(i, j) = Rational(h(i, j), d);
    o.lattice = Lattice::from_rational(l.gram_of(o.basis));
    BigInt det_h = abs(determinant(h));
    BigInt dn = 1;
    for (std::size_t i = 0; i < n; ++i) dn *= d;
    o.index = dn / det_h;
    return o;
}

/// Coordinates of an old-coordinate vector in the overlattice basis.
inline RatVec coords_in(const RatMatrix& basis, const RatVec& v) { return solve_in_rowspace(basis, v); }

struct GlueData {
    std::vector<RatVec> m1;  // classes in L1∨ (L1 coordinates)
    std::vector<RatVec> m2;  // images under psi, in L2∨
};

struct GlueResult {
    Overlattice over;
    BigInt subgroup_order = 1;
    bool even = false;
    bool l1_saturated = false;
    bool l2_saturated = false;
};

/// Elements (reduced mod L) of the subgroup generated by classes, paired with coefficient tuples.
inline std::vector<std::pair<std::vector<long>, RatVec>> subgroup_elements(const std::vector<RatVec>& gens,
                                                                           std::size_t n) {
    std::vector<long> ord;
    for (const auto& g : gens) ord.push_back(static_cast<long>(class_order(g)));
    std::vector<std::pair<std::vector<long>, RatVec>> out;
    std::vector<long> a(gens.size(), 0);
    while (true) {
        RatVec x(n, Rational(0));
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) x[j] += Rational(a[i]) * gens[i][j];
        out.emplace_back(a, reduce_mod_lattice(x));
        std::size_t i = 0;
        while (i < a.size() && ++a[i] == ord[i]) a[i++] = 0;
        if (i == a.size()) break;
    }
    return out;
}

inline GlueResult glue(const Lattice& l1, const Lattice& l2, const GlueData& g) {
    if (g.m1.size() != g.m2.size()) throw std::invalid_argument("psi must pair generators one-to-one");
    const std::size_t n1 = l1.rank(), n2 = l2.rank();
    for (const auto& x : g.m1)
        if (!in_dual(l1, x)) throw std::invalid_argument("class not in the dual of L1");
    for (const auto& x : g.m2)
        if (!in_dual(l2, x)) throw std::invalid_argument("class not in the dual of L2");
    for (std::size_t i = 0; i < g.m1.size(); ++i)
        if (class_order(g.m1[i]) != class_order(g.m2[i])) throw std::invalid_argument("psi does not respect orders");
    std::vector<RatVec> combined;
    for (std::size_t i = 0; i < g.m1.size(); ++i) {
        RatVec v = g.m1[i];
        v.insert(v.end(), g.m2[i].begin(), g.m2[i].end());
        combined.push_back(v);
    }
    std::set<RatVec> classes1;
    for (const auto& [coef, x] : subgroup_elements(combined, n1 + n2)) {
        (void)coef;
        RatVec x1(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n1));
        RatVec x2(x.begin() + static_cast<std::ptrdiff_t>(n1), x.end());
        if (in_lattice(x1) != in_lattice(x2)) throw std::invalid_argument("psi is not a well-defined isomorphism");
        Rational q = l1.square(x1) + l2.square(x2);
        if (mod_rational(q, Rational(2)) != 0) throw std::invalid_argument("q-compatibility failure");
        classes1.insert(x1);
    }
    GlueResult r;
    r.subgroup_order = classes1.size();
    Lattice sum = direct_sum(l1, l2);
    r.over = overlattice(sum, combined);
    r.even = r.over.lattice.is_even();
    auto sat_block = [&](std::size_t off, std::size_t cnt) {
        IntMatrix rows(0, n1 + n2);
        for (std::size_t i = 0; i < cnt; ++i) {
            RatVec e(n1 + n2, Rational(0));
            e[off + i] = 1;
            RatVec c = coords_in(r.over.basis, e);
            IntVec ci(c.size());
            for (std::size_t j = 0; j < c.size(); ++j) ci[j] = boost::multiprecision::numerator(c[j]);
            rows.append_row(ci);
        }
        return saturation(rows).index == 1;
    };
    r.l1_saturated = sat_block(0, n1);
    r.l2_saturated = sat_block(n1, n2);
    return r;
}

inline std::string vec_string(const RatVec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s + "]";
}

}  // namespace kummerlab
