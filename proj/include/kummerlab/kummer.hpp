// Kummer lattices inside A_1^16 indexed by F_2^4, the rank-6 lattices Q_4 and Q_2,
// and rank-22 glued embeddings.
#pragma once

#include "kummerlab/codes.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace kummerlab {

enum class KummerType { A16, D4x4, D8x2, D16, E8x2 };

inline const std::array<KummerType, 5>& all_kummer_types() {
    static const std::array<KummerType, 5> t{KummerType::A16, KummerType::D4x4, KummerType::D8x2, KummerType::D16,
                                             KummerType::E8x2};
    return t;
}

inline std::string kummer_symbol(KummerType t) {
    switch (t) {
        case KummerType::A16: return "16A1";
        case KummerType::D4x4: return "4D4";
        case KummerType::D8x2: return "2D8";
        case KummerType::D16: return "1D16";
        case KummerType::E8x2: return "2E8";
    }
    return "?";
}

inline KummerType parse_kummer_type(const std::string& s) {
    for (auto t : all_kummer_types())
        if (kummer_symbol(t) == s) return t;
    throw std::invalid_argument("unknown Kummer type '" + s + "' (expected 16A1, 4D4, 2D8, 1D16, 2E8)");
}

/// Expected data per type: exponent a of the discriminant group, log2 of [L : K(16A1)],
/// log2 of [L : root lattice], ADE string, number of extra 2-planes m.
struct KummerExpect {
    int a;
    int log_index_over_a16;
    int log_index_over_roots;
    std::string ade;
    int total_roots;
    int max_sigma;
};

inline KummerExpect kummer_expect(KummerType t) {
    switch (t) {
        case KummerType::A16: return {6, 0, 5, "16A1", 32, 5};
        case KummerType::D4x4: return {4, 1, 2, "4D4", 96, 4};
        case KummerType::D8x2: return {2, 2, 1, "2D8", 224, 3};
        case KummerType::D16: return {0, 3, 1, "1D16", 480, 2};
        case KummerType::E8x2: return {0, 3, 0, "2E8", 480, 2};
    }
    throw std::logic_error("bad type");
}

/// Bitmask over the 16 points of F_2^4 (point p has coordinates given by the bits of p;
/// v_1..v_4 are 1, 2, 4, 8).
using PointSet = std::uint32_t;

inline PointSet plane(int a, int b) {
    return (PointSet(1) << 0) | (PointSet(1) << a) | (PointSet(1) << b) | (PointSet(1) << (a ^ b));
}

inline PointSet point_set(std::initializer_list<int> pts) {
    PointSet s = 0;
    for (int p : pts) s |= PointSet(1) << p;
    return s;
}

/// The 2-planes adjoined to K(16A1).
inline std::vector<PointSet> kummer_planes(KummerType t) {
    std::vector<PointSet> out;
    switch (t) {
        case KummerType::A16: break;
        case KummerType::D4x4: out.push_back(plane(1, 2)); break;
        case KummerType::D8x2:
            out = {plane(1, 2), plane(1, 4), plane(1, 2 ^ 4)};
            break;
        case KummerType::D16:
            for (int x = 2; x < 16; x += 2) out.push_back(plane(1, x));
            break;
        case KummerType::E8x2: {
            std::set<PointSet> s;
            for (int a = 1; a < 8; ++a)
                for (int b = a + 1; b < 8; ++b) s.insert(plane(a, b));
            out.assign(s.begin(), s.end());
            break;
        }
    }
    return out;
}

/// (1/2) * indicator vector in the A_1^16 coordinates.
inline RatVec half_indicator(PointSet s) {
    RatVec v(16, Rational(0));
    for (int p = 0; p < 16; ++p)
        if ((s >> p) & 1) v[static_cast<std::size_t>(p)] = Rational(1, 2);
    return v;
}

struct KummerLattice {
    KummerType type = KummerType::A16;
    Lattice lattice;
    RatMatrix basis;  // rows in A_1^16 coordinates
    BigInt index_over_a16 = 1;
    BigInt index_over_roots = 1;
    std::vector<IntVec> root_pairs;
    std::vector<AdeComponent> ade;
    DiscriminantGroup disc;

    RatVec coords_of_subset(PointSet s) const { return coords_in(basis, half_indicator(s)); }
};

/// Post-construction verification failures throw.
inline KummerLattice build_kummer(KummerType t) {
    std::vector<RatVec> extra;
    const BinaryCode v16 = build_v16();
    for (Word w : v16.basis()) extra.push_back(half_indicator(w));
    for (PointSet p : kummer_planes(t)) extra.push_back(half_indicator(p));
    Overlattice o = overlattice(scaled_identity(16, -2), extra);
    KummerLattice k;
    k.type = t;
    k.lattice = o.lattice;
    k.basis = o.basis;
    k.index_over_a16 = o.index / 32;
    k.root_pairs = roots(k.lattice);
    k.ade = ade_type(k.lattice, k.root_pairs);
    IntMatrix rm(0, 16);
    for (const auto& r : k.root_pairs) rm.append_row(r);
    k.index_over_roots = saturation(rm).index;
    k.disc = discriminant_group(k.lattice);
    KummerExpect e = kummer_expect(t);
    auto pow2 = [](int n) { return BigInt(1) << n; };
    if (!k.lattice.is_even() || k.index_over_a16 != pow2(e.log_index_over_a16) ||
        k.index_over_roots != pow2(e.log_index_over_roots) || ade_string(k.ade) != e.ade ||
        static_cast<int>(2 * k.root_pairs.size()) != e.total_roots || k.disc.two_rank_if_elementary() != e.a)
        throw std::logic_error("post-construction verification failed for " + kummer_symbol(t));
    return k;
}

enum class QType { Q4, Q2 };

inline std::string q_symbol(QType q) { return q == QType::Q4 ? "Q4" : "Q2"; }

inline QType parse_q_type(const std::string& s) {
    if (s == "Q4") return QType::Q4;
    if (s == "Q2") return QType::Q2;
    throw std::invalid_argument("unknown complement '" + s + "' (expected Q4 or Q2)");
}

inline Lattice build_q(QType which) {
    IntMatrix g(6, 6);
    for (int i = 0; i < 6; ++i) g(i, i) = -2;
    if (which == QType::Q4) {
        for (int i = 1; i < 6; ++i) g(0, i) = g(i, 0) = 1;
    } else {
        for (int i = 1; i < 5; ++i) g(0, i) = g(i, 0) = 1;
        g(4, 5) = g(5, 4) = 1;
    }
    return Lattice(g, {"w1", "w2", "w3", "w4", "w5", "w6"});
}

/// q-values (in [0,2)) of all sums of m distinct classes, for each m.
inline std::vector<std::vector<Rational>> q_glue_values(const Lattice& l, const std::vector<RatVec>& classes) {
    for (const auto& c : classes)
        if (!in_dual(l, c)) throw std::invalid_argument("class not in group");
    const std::size_t k = classes.size();
    std::vector<std::set<Rational>> by(k + 1);
    for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
        RatVec s(l.rank(), Rational(0));
        for (std::size_t i = 0; i < k; ++i)
            if ((mask >> i) & 1)
                for (std::size_t j = 0; j < l.rank(); ++j) s[j] += classes[i][j];
        by[static_cast<std::size_t>(std::popcount(mask))].insert(q_value(l, s));
    }
    std::vector<std::vector<Rational>> out;
    for (auto& s : by) out.emplace_back(s.begin(), s.end());
    return out;
}

/// Glue sets t_1..t_4 paired with Q_4.
inline std::vector<PointSet> glue_sets_q4() {
    return {plane(1, 8), plane(2, 4), plane(1 ^ 2, 4 ^ 8), plane(1 ^ 2 ^ 4, 1 ^ 4 ^ 8)};
}

/// Six-element glue sets paired with Q_2 in the refinement.
inline std::vector<PointSet> glue_sets_q2() {
    return {point_set({1, 2, 4, 2 ^ 4, 8, 1 ^ 8}), point_set({1, 2, 8, 2 ^ 8, 4 ^ 8, 1 ^ 4 ^ 8})};
}

/// u_i = (1/2) sum over j in {2..6}, j != i+1, of w_j (w_j reading) or w_i (literal reading).
inline RatVec u_class_q4(int i, bool literal_wi) {
    RatVec u(6, Rational(0));
    for (int j = 2; j <= 6; ++j) {
        if (j == i + 1) continue;
        int idx = literal_wi ? i : j;
        u[static_cast<std::size_t>(idx - 1)] += Rational(1, 2);
    }
    return u;
}

inline RatVec u_class_q2_literal(int i) {
    RatVec u(6, Rational(0));
    u[static_cast<std::size_t>(i - 1)] += Rational(1, 2);
    u[2] += Rational(1, 2);
    return u;
}

inline int glue_n(KummerType t, QType q) {
    if (q == QType::Q4) {
        switch (t) {
            case KummerType::A16: return 4;
            case KummerType::D4x4: return 3;
            case KummerType::D8x2: return 2;
            default: return 0;
        }
    }
    switch (t) {
        case KummerType::A16: return 2;
        case KummerType::D4x4: return 2;
        case KummerType::D8x2: return 1;
        default: return 0;
    }
}

struct EmbeddingReport {
    KummerType type = KummerType::A16;
    QType complement = QType::Q4;
    int sigma = 0;
    int glue_rank = 0;  // number of glue generators used
    std::string u_reading;
    std::vector<std::string> notes;
    Lattice ambient;
    RatMatrix basis;  // rows in (K ⊕ Q) coordinates
    bool even = false;
    std::pair<int, int> signature{0, 0};
    bool two_elementary = false;
    bool type2 = false;
    int disc_two_rank = -1;
    bool kummer_saturated = false;
    bool complement_saturated = false;
    bool complement_two_elementary_type2 = false;
    bool roots_split = false;  // every root of the chosen negative definite part lies in K or is orthogonal to K
    std::size_t complement_root_pairs = 0;
    bool all_verified() const {
        return even && signature == std::make_pair(1, 21) && two_elementary && type2 && disc_two_rank == 2 * sigma &&
               kummer_saturated && complement_saturated && complement_two_elementary_type2 && roots_split;
    }
};

struct EmbeddingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// A class of square 2 in Q (found offline by a small coefficient search).
inline RatVec positive_class(QType which) {
    if (which == QType::Q4) return {2, 1, 1, 1, 1, 1};
    return {4, 2, 2, 2, 2, 1};
}

}  // namespace detail

/// Glue K(T) with Q along the first j generators of the recipe.
inline EmbeddingReport embed_kummer(KummerType t, int sigma, QType complement, bool extended = false) {
    KummerLattice k = build_kummer(t);
    Lattice q = build_q(complement);
    const KummerExpect e = kummer_expect(t);
    const int b = complement == QType::Q4 ? 4 : 2;
    const int n = glue_n(t, complement);
    EmbeddingReport rep;
    rep.type = t;
    rep.complement = complement;
    rep.sigma = sigma;
    rep.u_reading = "none";
    if (complement == QType::Q2 && n > 0 && !extended)
        throw EmbeddingError("gluing " + kummer_symbol(t) + " with Q2 requires --extended");
    // sigma = (a + b)/2 - j
    const int top = (e.a + b) / 2;
    const int j = top - sigma;
    if (sigma < 1 || j < 0 || j > n) throw EmbeddingError("no saturated embedding exists for these parameters");

    GlueData gd;
    if (j > 0) {
        std::vector<RatVec> ts;
        if (complement == QType::Q4) {
            auto sets = glue_sets_q4();
            for (int i = 0; i < j; ++i) ts.push_back(k.coords_of_subset(sets[static_cast<std::size_t>(i)]));
            std::vector<RatVec> us;
            bool literal_ok = true;
            for (int i = 1; i <= j; ++i) {
                RatVec lit = u_class_q4(i, true);
                if (!in_dual(q, lit) || in_lattice(lit)) literal_ok = false;
                us.push_back(u_class_q4(i, false));
            }
            rep.u_reading = "w_j";
            rep.notes.push_back(literal_ok ? "literal w_i reading also yields nonzero classes"
                                           : "literal w_i reading yields the zero class; w_j reading used");
            gd.m1 = ts;
            gd.m2 = us;
        } else {
            auto sets = glue_sets_q2();
            for (int i = 0; i < j; ++i) ts.push_back(k.coords_of_subset(sets[static_cast<std::size_t>(i)]));
            std::vector<RatVec> lit;
            bool literal_ok = true;
            for (int i = 1; i <= j; ++i) {
                RatVec u = u_class_q2_literal(i);
                if (!in_dual(q, u)) literal_ok = false;
                lit.push_back(u);
            }
            if (literal_ok) {
                GlueData trial{ts, lit};
                try {
                    glue(k.lattice, q, trial);
                } catch (const std::invalid_argument&) {
                    literal_ok = false;
                }
            }
            if (literal_ok) {
                rep.u_reading = "(w_i + w_3)/2";
                gd = GlueData{ts, lit};
            } else {
                rep.notes.push_back("(w_i + w_3)/2 is not a compatible dual class; searched the discriminant group");
                DiscriminantGroup dq = discriminant_group(q);
                std::vector<RatVec> elems;
                for (const auto& [coef, x] : subgroup_elements(dq.generators, 6)) {
                    (void)coef;
                    if (!in_lattice(x)) elems.push_back(x);
                }
                bool found = false;
                std::vector<std::size_t> pick(static_cast<std::size_t>(j), 0);
                auto rec = [&](auto&& self, std::size_t lvl) -> void {
                    if (found) return;
                    if (lvl == pick.size()) {
                        std::vector<RatVec> us;
                        for (auto p : pick) us.push_back(elems[p]);
                        try {
                            GlueData trial{ts, us};
                            glue(k.lattice, q, trial);
                            gd = trial;
                            found = true;
                        } catch (const std::invalid_argument&) {
                        }
                        return;
                    }
                    for (std::size_t c = 0; c < elems.size(); ++c) {
                        pick[lvl] = c;
                        self(self, lvl + 1);
                    }
                };
                rec(rec, 0);
                if (!found) throw EmbeddingError("no compatible Q2 classes found");
                std::string desc;
                for (const auto& u : gd.m2) desc += (desc.empty() ? "" : ";") + vec_string(u);
                rep.u_reading = "searched:" + desc;
            }
        }
    }
    rep.glue_rank = j;
    GlueResult gr = glue(k.lattice, q, gd);
    rep.ambient = gr.over.lattice;
    rep.basis = gr.over.basis;
    rep.even = gr.even;
    rep.kummer_saturated = gr.l1_saturated;
    rep.complement_saturated = gr.l2_saturated;
    rep.signature = signature(rep.ambient);
    auto fl = is_two_elementary_type2(rep.ambient);
    rep.two_elementary = fl.elementary;
    rep.type2 = fl.type2;
    rep.disc_two_rank = discriminant_group(rep.ambient).two_rank_if_elementary();

    // Orthogonal complement of K inside the ambient lattice.
    const std::size_t nk = 16, nt = 22;
    IntMatrix krows(0, nt);
    for (std::size_t i = 0; i < nk; ++i) {
        RatVec ei(nt, Rational(0));
        ei[i] = 1;
        RatVec c = coords_in(rep.basis, ei);
        IntVec ci(nt);
        for (std::size_t z = 0; z < nt; ++z) ci[z] = boost::multiprecision::numerator(c[z]);
        krows.append_row(ci);
    }
    IntMatrix comp = orthogonal_complement(rep.ambient, krows);
    Lattice compl_lat = sublattice(rep.ambient, comp);
    auto cf = is_two_elementary_type2(compl_lat);
    rep.complement_two_elementary_type2 = cf.elementary && cf.type2;

    // Roots of the orthogonal complement of a positive class taken from Q.
    RatVec dq = detail::positive_class(complement);
    if (q.square(dq) != 2) throw std::logic_error("positive class has wrong square");
    RatVec dold(nt, Rational(0));
    for (std::size_t i = 0; i < 6; ++i) dold[nk + i] = dq[i];
    RatVec dnew = coords_in(rep.basis, dold);
    IntMatrix drow(0, nt);
    {
        BigInt den = 1;
        for (auto& c : dnew) den = lcm_big(den, boost::multiprecision::denominator(c));
        IntVec v(nt);
        for (std::size_t z = 0; z < nt; ++z) v[z] = boost::multiprecision::numerator(dnew[z] * Rational(den));
        drow.append_row(v);
    }
    IntMatrix perp = orthogonal_complement(rep.ambient, drow);
    Lattice neg = sublattice(rep.ambient, perp);
    auto rs = roots(neg);
    rep.complement_root_pairs = rs.size();
    bool split = true;
    RatMatrix perp_r = to_rational(perp);
    for (const auto& r : rs) {
        // back to (K ⊕ Q) coordinates
        RatVec inP(nt, Rational(0));
        for (std::size_t a = 0; a < perp.rows(); ++a)
            if (r[a] != 0)
                for (std::size_t z = 0; z < nt; ++z) inP[z] += Rational(r[a]) * perp_r(a, z);
        RatVec old(nt, Rational(0));
        for (std::size_t a = 0; a < nt; ++a)
            if (inP[a] != 0)
                for (std::size_t z = 0; z < nt; ++z) old[z] += inP[a] * rep.basis(a, z);
        bool k_zero = true, q_zero = true;
        for (std::size_t z = 0; z < nk; ++z)
            if (old[z] != 0) k_zero = false;
        for (std::size_t z = nk; z < nt; ++z)
            if (old[z] != 0) q_zero = false;
        if (!k_zero && !q_zero) {
            split = false;
            break;
        }
    }
    rep.roots_split = split;
    return rep;
}

/// Admissible Artin invariants for a type: sigma in [1, max_sigma].
inline bool sigma_admissible(KummerType t, int sigma) { return sigma >= 1 && sigma <= kummer_expect(t).max_sigma; }

/// Tries the Q_4 recipe and then the plain direct sum with Q_2.
inline std::optional<EmbeddingReport> embed_any(KummerType t, int sigma) {
    try {
        return embed_kummer(t, sigma, QType::Q4);
    } catch (const EmbeddingError&) {
    }
    if (glue_n(t, QType::Q2) == 0) {
        try {
            return embed_kummer(t, sigma, QType::Q2);
        } catch (const EmbeddingError&) {
        }
    }
    return std::nullopt;
}

}  // namespace kummerlab
