// Binary codes on at most 24 points, the doubly-even weight-not-4 condition, exhaustive
// search up to permutation, and overlattices of A_1^m.
#pragma once

#include "kummerlab/lattice.hpp"

#include <bit>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kummerlab {

using Word = std::uint32_t;

class BinaryCode {
public:
    BinaryCode() = default;
    BinaryCode(int m, const std::vector<Word>& gens) : m_(m) {
        if (m < 0 || m > 24) throw std::invalid_argument("ground size must be in [0, 24]");
        const Word mask = m == 32 ? ~Word(0) : ((Word(1) << m) - 1);
        std::vector<Word> rows;
        for (Word g : gens) {
            if (g & ~mask) throw std::invalid_argument("codeword outside the ground set");
            rows.push_back(g);
        }
        // reduced echelon form, pivot = lowest set bit, rows ordered by pivot
        std::vector<Word> basis;
        for (Word r : rows) {
            for (Word b : basis)
                if (r & (b & -b)) r ^= b;
            if (!r) continue;
            Word p = r & -r;
            for (Word& b : basis)
                if (b & p) b ^= r;
            basis.push_back(r);
        }
        std::sort(basis.begin(), basis.end(), [](Word a, Word b) { return (a & -a) < (b & -b); });
        basis_ = basis;
    }

    int ground_size() const { return m_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Word>& basis() const { return basis_; }

    std::vector<Word> codewords() const {
        std::vector<Word> w(std::size_t(1) << basis_.size(), 0);
        for (std::size_t i = 1; i < w.size(); ++i) {
            int b = std::countr_zero(i);
            w[i] = w[i ^ (std::size_t(1) << b)] ^ basis_[static_cast<std::size_t>(b)];
        }
        return w;
    }
    std::map<int, long> weight_distribution() const {
        std::map<int, long> d;
        for (Word w : codewords()) ++d[std::popcount(w)];
        return d;
    }
    bool contains(Word w) const {
        for (Word b : basis_)
            if (w & (b & -b)) w ^= b;
        return w == 0;
    }
    /// Every nonzero word has weight divisible by 4 and different from 4.
    bool is_admissible() const {
        for (Word w : codewords()) {
            int k = std::popcount(w);
            if (w && (k % 4 != 0 || k == 4)) return false;
        }
        return true;
    }
    Word support() const {
        Word s = 0;
        for (Word b : basis_) s |= b;
        return s;
    }
    std::string bitstring(Word w) const {
        std::string s;
        for (int i = 0; i < m_; ++i) s += ((w >> i) & 1) ? '1' : '0';
        return s;
    }
    bool operator==(const BinaryCode& o) const { return m_ == o.m_ && basis_ == o.basis_; }

private:
    int m_ = 0;
    std::vector<Word> basis_;
};

inline Word parse_bitstring(const std::string& s) {
    if (s.size() > 24) throw std::invalid_argument("bit string longer than 24");
    Word w = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            w |= Word(1) << i;
        else if (s[i] != '0')
            throw std::invalid_argument("bit string must contain only 0 and 1");
    }
    return w;
}

inline int ceil_log2(int x) {
    int r = 0;
    while ((1 << r) < x) ++r;
    return r;
}

inline int f_bound(int m) {
    if (m < 0 || m > 24) throw std::out_of_range("m must lie in [0, 24]");
    if (m < 16) return 4 - ceil_log2(16 - m);
    if (m == 16) return 5;
    return m - 12;
}

/// Point p of F_2^4 is coordinate p; affine hyperplanes plus the whole set.
inline BinaryCode build_v16() {
    std::vector<Word> gens{0xFFFFu};
    for (int i = 0; i < 4; ++i) {
        Word h = 0;
        for (int p = 0; p < 16; ++p)
            if ((p >> i) & 1) h |= Word(1) << p;
        gens.push_back(h);
    }
    return BinaryCode(16, gens);
}

/// Span of the hyperplanes x_1 = 1, ..., x_j = 1, restricted to the union of their supports.
inline BinaryCode build_subcode(int j) {
    if (j < 0 || j > 4) throw std::out_of_range("j must lie in [0, 4]");
    std::vector<int> pts;
    for (int p = 0; p < 16; ++p)
        if (p & ((1 << j) - 1)) pts.push_back(p);
    std::vector<Word> gens;
    for (int i = 0; i < j; ++i) {
        Word h = 0;
        for (std::size_t k = 0; k < pts.size(); ++k)
            if ((pts[k] >> i) & 1) h |= Word(1) << k;
        gens.push_back(h);
    }
    return BinaryCode(static_cast<int>(pts.size()), gens);
}

inline BinaryCode golay_witness() {
    static const char* rows[12] = {"110111000101", "101110001011", "011100010111", "111000101101",
                                   "110001011011", "100010110111", "000101101111", "001011011101",
                                   "010110111001", "101101110001", "011011100011", "111111111110"};
    std::vector<Word> gens;
    for (int i = 0; i < 12; ++i) {
        Word w = Word(1) << i;
        for (int j = 0; j < 12; ++j)
            if (rows[i][j] == '1') w |= Word(1) << (12 + j);
        gens.push_back(w);
    }
    BinaryCode c(24, gens);
    auto d = c.weight_distribution();
    const std::map<int, long> expect{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
    if (c.dim() != 12 || d != expect) throw std::logic_error("Golay generator self-check failed");
    return c;
}

/// Shortening: codewords vanishing on the last 24 - m coordinates, restricted to the first m.
inline BinaryCode shortened_golay(int m) {
    BinaryCode g = golay_witness();
    const Word keep = (Word(1) << m) - 1;
    std::vector<Word> gens;
    for (Word w : g.codewords())
        if ((w & ~keep & 0xFFFFFFu) == 0) gens.push_back(w);
    return BinaryCode(m, gens);
}

// ---------------------------------------------------------------------------
// Column-multiset view: a code of dimension k on m points is the multiset of its
// columns in F_2^k, determined up to GL_k(F_2).

namespace detail {

struct ColumnView {
    int k = 0;
    std::vector<int> count;  // size 2^k, count[x] = number of coordinates with column x
};

inline ColumnView column_view(const BinaryCode& c) {
    ColumnView v;
    v.k = c.dim();
    v.count.assign(std::size_t(1) << v.k, 0);
    for (int j = 0; j < c.ground_size(); ++j) {
        int x = 0;
        for (int r = 0; r < v.k; ++r)
            if ((c.basis()[static_cast<std::size_t>(r)] >> j) & 1) x |= 1 << r;
        ++v.count[static_cast<std::size_t>(x)];
    }
    return v;
}

inline int parity(int x) { return std::popcount(static_cast<unsigned>(x)) & 1; }

/// weights[phi] = weight of the codeword attached to the functional phi.
inline std::vector<int> functional_weights(const ColumnView& v) {
    const int N = 1 << v.k;
    std::vector<int> w(static_cast<std::size_t>(N), 0);
    for (int phi = 0; phi < N; ++phi)
        for (int x = 0; x < N; ++x)
            if (v.count[static_cast<std::size_t>(x)] && parity(phi & x)) w[static_cast<std::size_t>(phi)] += v.count[static_cast<std::size_t>(x)];
    return w;
}

struct Signature {
    std::vector<long> key;
    std::vector<long> point_label;  // per point of F_2^k; -1 for empty points
};

/// GL-invariant signature; point labels are invariant classes of support points.
inline Signature signature_of(const ColumnView& v) {
    const int N = 1 << v.k;
    std::vector<int> wt = functional_weights(v);
    Signature s;
    s.key.push_back(v.k);
    s.key.push_back(v.count[0]);
    // per-codeword profile: weight and multiset of intersection sizes
    std::vector<std::vector<int>> prof;
    for (int phi = 1; phi < N; ++phi) {
        std::vector<int> p{wt[static_cast<std::size_t>(phi)]};
        std::vector<int> inter;
        for (int psi = 1; psi < N; ++psi) {
            if (psi == phi) continue;
            // |A ∩ B| = (wA + wB - w(A+B)) / 2
            inter.push_back((wt[static_cast<std::size_t>(phi)] + wt[static_cast<std::size_t>(psi)] - wt[static_cast<std::size_t>(phi ^ psi)]) / 2);
        }
        std::sort(inter.begin(), inter.end());
        p.insert(p.end(), inter.begin(), inter.end());
        prof.push_back(p);
    }
    std::sort(prof.begin(), prof.end());
    for (auto& p : prof) s.key.insert(s.key.end(), p.begin(), p.end());
    // per-point profile
    std::vector<std::vector<int>> pts(static_cast<std::size_t>(N));
    for (int x = 1; x < N; ++x) {
        if (!v.count[static_cast<std::size_t>(x)]) continue;
        std::vector<int> p{v.count[static_cast<std::size_t>(x)]};
        std::vector<int> ws;
        for (int phi = 1; phi < N; ++phi)
            if (parity(phi & x)) ws.push_back(wt[static_cast<std::size_t>(phi)]);
        std::sort(ws.begin(), ws.end());
        p.insert(p.end(), ws.begin(), ws.end());
        pts[static_cast<std::size_t>(x)] = p;
    }
    std::vector<std::vector<int>> distinct;
    for (int x = 1; x < N; ++x)
        if (!pts[static_cast<std::size_t>(x)].empty()) distinct.push_back(pts[static_cast<std::size_t>(x)]);
    std::sort(distinct.begin(), distinct.end());
    s.key.push_back(-1);
    for (auto& p : distinct) {
        s.key.insert(s.key.end(), p.begin(), p.end());
        s.key.push_back(-2);
    }
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    s.point_label.assign(static_cast<std::size_t>(N), -1);
    for (int x = 1; x < N; ++x)
        if (!pts[static_cast<std::size_t>(x)].empty())
            s.point_label[static_cast<std::size_t>(x)] =
                std::lower_bound(distinct.begin(), distinct.end(), pts[static_cast<std::size_t>(x)]) - distinct.begin();
    return s;
}

/// Searches an invertible linear map T with count_b(T x) = count_a(x) and matching labels.
inline bool isomorphic_views(const ColumnView& a, const Signature& sa, const ColumnView& b, const Signature& sb) {
    if (a.k != b.k || sa.key != sb.key) return false;
    const int k = a.k, N = 1 << k;
    if (k == 0) return a.count[0] == b.count[0];
    // basis of A from support points, rarest labels first
    std::map<long, int> freq;
    for (int x = 1; x < N; ++x)
        if (sa.point_label[static_cast<std::size_t>(x)] >= 0) ++freq[sa.point_label[static_cast<std::size_t>(x)]];
    std::vector<int> cand;
    for (int x = 1; x < N; ++x)
        if (sa.point_label[static_cast<std::size_t>(x)] >= 0) cand.push_back(x);
    std::stable_sort(cand.begin(), cand.end(), [&](int x, int y) {
        return freq[sa.point_label[static_cast<std::size_t>(x)]] < freq[sa.point_label[static_cast<std::size_t>(y)]];
    });
    std::vector<int> basis;
    int span_mask_dim = 0;
    std::vector<char> in_span(static_cast<std::size_t>(N), 0);
    in_span[0] = 1;
    for (int x : cand) {
        if (in_span[static_cast<std::size_t>(x)]) continue;
        basis.push_back(x);
        ++span_mask_dim;
        std::vector<int> cur;
        for (int y = 0; y < N; ++y)
            if (in_span[static_cast<std::size_t>(y)]) cur.push_back(y);
        for (int y : cur) in_span[static_cast<std::size_t>(y ^ x)] = 1;
        if (span_mask_dim == k) break;
    }
    if (static_cast<int>(basis.size()) != k) return false;
    // image[y] for y in span of the first d basis vectors, indexed by coefficient mask
    std::vector<int> img(static_cast<std::size_t>(N), 0), pre(static_cast<std::size_t>(N), 0);
    std::vector<char> used(static_cast<std::size_t>(N), 0);
    used[0] = 1;
    auto rec = [&](auto&& self, int d) -> bool {
        if (d == k) return true;
        const int half = 1 << d;
        const int x = basis[static_cast<std::size_t>(d)];
        for (int t = 1; t < N; ++t) {
            if (used[static_cast<std::size_t>(t)]) continue;
            if (sb.point_label[static_cast<std::size_t>(t)] != sa.point_label[static_cast<std::size_t>(x)]) continue;
            bool ok = true;
            for (int c = 0; c < half && ok; ++c) {
                int ya = pre[static_cast<std::size_t>(c)] ^ x, yb = img[static_cast<std::size_t>(c)] ^ t;
                if (used[static_cast<std::size_t>(yb)] || a.count[static_cast<std::size_t>(ya)] != b.count[static_cast<std::size_t>(yb)] ||
                    sa.point_label[static_cast<std::size_t>(ya)] != sb.point_label[static_cast<std::size_t>(yb)])
                    ok = false;
            }
            if (!ok) continue;
            for (int c = 0; c < half; ++c) {
                pre[static_cast<std::size_t>(half + c)] = pre[static_cast<std::size_t>(c)] ^ x;
                img[static_cast<std::size_t>(half + c)] = img[static_cast<std::size_t>(c)] ^ t;
                used[static_cast<std::size_t>(img[static_cast<std::size_t>(half + c)])] = 1;
            }
            if (self(self, d + 1)) return true;
            for (int c = 0; c < half; ++c) used[static_cast<std::size_t>(img[static_cast<std::size_t>(half + c)])] = 0;
        }
        return false;
    };
    return rec(rec, 0);
}

/// Rebuilds an explicit code from a column multiset (coordinates grouped by column value).
inline BinaryCode code_from_view(const ColumnView& v, int m) {
    std::vector<Word> rows(static_cast<std::size_t>(v.k), 0);
    int j = 0;
    for (int x = 1; x < (1 << v.k); ++x)
        for (int t = 0; t < v.count[static_cast<std::size_t>(x)]; ++t, ++j)
            for (int r = 0; r < v.k; ++r)
                if ((x >> r) & 1) rows[static_cast<std::size_t>(r)] |= Word(1) << j;
    (void)m;
    return BinaryCode(m, rows);
}

}  // namespace detail

/// Coordinate-permutation equivalence.
inline bool codes_equivalent(const BinaryCode& a, const BinaryCode& b) {
    if (a.ground_size() != b.ground_size() || a.dim() != b.dim()) return false;
    auto va = detail::column_view(a), vb = detail::column_view(b);
    auto sa = detail::signature_of(va), sb = detail::signature_of(vb);
    return detail::isomorphic_views(va, sa, vb, sb);
}

/// Partition into equivalence classes; returns class index per input, classes numbered by first occurrence.
inline std::vector<int> equivalence_classes(const std::vector<BinaryCode>& codes) {
    std::vector<int> cls(codes.size(), -1);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        for (std::size_t r = 0; r < reps.size(); ++r)
            if (codes_equivalent(codes[reps[r]], codes[i])) {
                cls[i] = static_cast<int>(r);
                break;
            }
        if (cls[i] < 0) {
            cls[i] = static_cast<int>(reps.size());
            reps.push_back(i);
        }
    }
    return cls;
}

struct CodeSearchResult {
    int m = 0;
    int dim = 0;
    bool exhaustive = true;
    std::vector<BinaryCode> maximal;     // one per equivalence class
    std::vector<std::size_t> classes_per_dim;
    long candidates_examined = 0;
};

/// Exhaustive search of admissible codes on m points, dimension by dimension, with isomorph rejection.
inline CodeSearchResult max_admissible_dim(int m, long budget = 2'000'000'000L) {
    if (m < 0 || m > 17) throw std::out_of_range("exhaustive mode supports m <= 17");
    using detail::ColumnView;
    CodeSearchResult res;
    res.m = m;
    struct Rep {
        ColumnView view;
        detail::Signature sig;
    };
    std::vector<Rep> level;
    ColumnView zero;
    zero.k = 0;
    zero.count = {m};
    level.push_back({zero, detail::signature_of(zero)});
    res.classes_per_dim.push_back(1);
    while (true) {
        std::map<std::vector<long>, std::vector<std::size_t>> index;
        std::vector<Rep> next;
        for (const Rep& rep : level) {
            const int k = rep.view.k, N = 1 << k;
            std::vector<int> base_w = detail::functional_weights(rep.view);
            // new functional (phi, 1): weight = sum_x [phi(x)=0] a_x + [phi(x)=1] (c_x - a_x)
            std::vector<int> w(static_cast<std::size_t>(N), 0);
            for (int phi = 0; phi < N; ++phi) w[static_cast<std::size_t>(phi)] = base_w[static_cast<std::size_t>(phi)];
            std::vector<int> a(static_cast<std::size_t>(N), 0);
            auto rec = [&](auto&& self, int x) -> void {
                if (x == N) {
                    if (++res.candidates_examined > budget) {
                        res.exhaustive = false;
                        return;
                    }
                    for (int phi = 0; phi < N; ++phi) {
                        int t = w[static_cast<std::size_t>(phi)];
                        if (t % 4 != 0 || t == 4 || t == 0) return;
                    }
                    ColumnView nv;
                    nv.k = k + 1;
                    nv.count.assign(static_cast<std::size_t>(2 * N), 0);
                    for (int y = 0; y < N; ++y) {
                        nv.count[static_cast<std::size_t>(y)] = rep.view.count[static_cast<std::size_t>(y)] - a[static_cast<std::size_t>(y)];
                        nv.count[static_cast<std::size_t>(y + N)] = a[static_cast<std::size_t>(y)];
                    }
                    detail::Signature sg = detail::signature_of(nv);
                    auto& bucket = index[sg.key];
                    for (std::size_t idx : bucket)
                        if (detail::isomorphic_views(next[idx].view, next[idx].sig, nv, sg)) return;
                    bucket.push_back(next.size());
                    next.push_back({nv, sg});
                    return;
                }
                const int cx = rep.view.count[static_cast<std::size_t>(x)];
                for (int ax = 0; ax <= cx; ++ax) {
                    if (!res.exhaustive) return;
                    a[static_cast<std::size_t>(x)] = ax;
                    self(self, x + 1);
                    if (ax < cx)
                        for (int phi = 0; phi < N; ++phi)
                            w[static_cast<std::size_t>(phi)] += detail::parity(phi & x) ? -1 : 1;
                }
                for (int phi = 0; phi < N; ++phi) w[static_cast<std::size_t>(phi)] -= (detail::parity(phi & x) ? -1 : 1) * cx;
                a[static_cast<std::size_t>(x)] = 0;
            };
            // initial state a_x = 0 for all x: weight of (phi,1) = sum_{phi(x)=1} c_x = base weight
            rec(rec, 0);
            if (!res.exhaustive) break;
        }
        if (next.empty() || !res.exhaustive) break;
        level = std::move(next);
        res.classes_per_dim.push_back(level.size());
    }
    res.dim = static_cast<int>(res.classes_per_dim.size()) - 1;
    for (const Rep& r : level) res.maximal.push_back(detail::code_from_view(r.view, m));
    return res;
}

struct WitnessResult {
    int m = 0;
    int lower = 0;  // witnessed dimension
    int upper = 0;  // chain bound
    BinaryCode witness;
};

/// Witness mode: shortened Golay codes for m >= 17, subcodes of V_16 below, combined with
/// g(m) <= g(m-1) + 1 from a known exact value g(m0).
inline WitnessResult witness_bound(int m, int m0, int g_m0) {
    if (m < 0 || m > 24) throw std::out_of_range("m must lie in [0, 24]");
    WitnessResult r;
    r.m = m;
    if (m >= 17) {
        r.witness = shortened_golay(m);
    } else if (m == 16) {
        r.witness = build_v16();
    } else {
        int j = 0;
        while (j < 4 && 16 - (1 << (4 - (j + 1))) <= m) ++j;
        BinaryCode s = build_subcode(j);
        r.witness = BinaryCode(m, s.basis());
    }
    r.lower = r.witness.dim();
    r.upper = m >= m0 ? g_m0 + (m - m0) : 24;
    return r;
}

struct CodeOverlattice {
    Overlattice over;
    std::size_t root_pairs = 0;
};

inline CodeOverlattice code_to_overlattice(const BinaryCode& c) {
    if (!c.is_admissible()) throw std::invalid_argument("non-admissible code");
    const std::size_t m = static_cast<std::size_t>(c.ground_size());
    Lattice a1 = scaled_identity(m, -2);
    std::vector<RatVec> extra;
    for (Word w : c.basis()) {
        RatVec v(m, Rational(0));
        for (std::size_t i = 0; i < m; ++i)
            if ((w >> i) & 1) v[i] = Rational(1, 2);
        extra.push_back(v);
    }
    CodeOverlattice r;
    r.over = overlattice(a1, extra);
    if (!r.over.lattice.is_even()) throw std::logic_error("overlattice is not even");
    r.root_pairs = roots(r.over.lattice).size();
    if (r.root_pairs != m) throw std::logic_error("overlattice gained roots");
    return r;
}

}  // namespace kummerlab
