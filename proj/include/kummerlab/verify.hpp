// Acceptance checks. Sampled checks seed one generator per sample from the base seed, so
// nothing depends on the worker count.
#pragma once

#include "kummerlab/parallel.hpp"
#include "kummerlab/report.hpp"

#include <array>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace kummerlab {

inline constexpr std::uint64_t kDefaultSeed = 20240601ULL;

struct VerifyOptions {
    std::uint64_t seed = kDefaultSeed;
    unsigned jobs = 1;
    bool quick = false;
    std::ostream* progress = nullptr;  // verbose output; never stdout

    // sample counts
    std::size_t cartier_samples = 500;
    std::size_t cartier_odd_samples = 100;
    std::size_t p1_samples = 500;
    std::size_t z_samples = 100;
    std::size_t singularity_samples = 200;  // per branch and family
    std::size_t h07_samples = 100;          // per side
};

struct CriterionResult {
    CriterionResult() = default;
    CriterionResult(int n, std::string i, std::string s) : number(n), id(std::move(i)), statement(std::move(s)) {}

    int number = 0;
    std::string id;
    std::string statement;
    bool passed = false;
    Json details = Json::object();
    std::vector<unsigned> field_degrees;
};

namespace detail {

inline void note(const VerifyOptions& o, const std::string& s) {
    if (o.progress) *o.progress << "[kummerlab] " << s << std::endl;
}

inline std::shared_ptr<const GF> binary_field(unsigned e) { return std::make_shared<const GF>(2, e); }

/// Distinct counts of failing samples, keyed by failure kind.
struct Tally {
    std::map<std::string, std::size_t> failures;
    void add(const std::string& kind) { ++failures[kind]; }
    bool clean() const { return failures.empty(); }
    Json json() const {
        Json j = Json::object();
        for (const auto& [k, n] : failures) j[k] = n;
        return j;
    }
};

/// Per-sample failure lists merged in index order.
inline Tally merge(const std::vector<std::vector<std::string>>& per_sample) {
    Tally t;
    for (const auto& v : per_sample)
        for (const auto& k : v) t.add(k);
    return t;
}

inline Poly random_poly(const GF& k, std::mt19937_64& rng, unsigned deg) {
    Poly p(k, 2);
    for (unsigned i = 0; i <= deg; ++i)
        for (unsigned j = 0; i + j <= deg; ++j) p.add_term(Mono{i, j}, k.random(rng));
    return p;
}

inline const std::vector<Exponent>& z_span(Family f) {
    static const std::vector<Exponent> c4{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 1}};
    static const std::vector<Exponent> c2{{1, 0}, {0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}};
    return f == Family::Class4 ? c4 : c2;
}

inline const std::array<Exponent, 4>& z_adversarial(Family f) {
    static const std::array<Exponent, 4> c4{{{3, 1}, {3, 2}, {1, 3}, {2, 3}}};
    static const std::array<Exponent, 4> c2{{{1, 3}, {1, 5}, {1, 6}, {0, 7}}};
    return f == Family::Class4 ? c4 : c2;
}

enum Stream : std::uint64_t {
    kCartier = 6,
    kCartierOdd = 60,
    kP1 = 7,
    kZ = 8,
    kZAdv = 80,
    kSurface = 9,
    kH07 = 10,
};

}  // namespace detail

// 1 -------------------------------------------------------------------------------------------

inline CriterionResult verify_table1(const VerifyOptions& o) {
    CriterionResult r{1, "table1", "root-sublattice type and the indices over the roots and over K(16A1) for the five Kummer lattices"};
    Json rows = Json::array();
    bool ok = true;
    for (auto t : all_kummer_types()) {
        detail::note(o, "table1: building " + kummer_symbol(t));
        auto k = build_kummer(t);
        auto ex = kummer_expect(t);
        const bool ade_ok = ade_string(k.ade) == ex.ade;
        const bool roots_ok = k.index_over_roots == (BigInt(1) << ex.log_index_over_roots);
        const bool a16_ok = k.index_over_a16 == (BigInt(1) << ex.log_index_over_a16);
        ok = ok && ade_ok && roots_ok && a16_ok;
        rows.push_back({{"type", kummer_symbol(t)},
                        {"ade", ade_string(k.ade)},
                        {"index_over_roots", big_json(k.index_over_roots)},
                        {"index_over_16A1", big_json(k.index_over_a16)},
                        {"ade_ok", ade_ok},
                        {"index_over_roots_ok", roots_ok},
                        {"index_over_16A1_ok", a16_ok}});
    }
    r.passed = ok;
    r.details = {{"rows", rows}};
    return r;
}

// 2 -------------------------------------------------------------------------------------------

inline CriterionResult verify_root_counts(const VerifyOptions& o) {
    CriterionResult r{2, "roots", "root counts 32, 96, 224, 480, 480; extra roots 64m with m = 0, 1, 3, 7, 7"};
    static const std::array<int, 5> extra_m{0, 1, 3, 7, 7};
    Json rows = Json::array();
    bool ok = true;
    std::size_t i = 0;
    for (auto t : all_kummer_types()) {
        detail::note(o, "roots: enumerating " + kummer_symbol(t));
        auto k = build_kummer(t);
        const std::size_t total = 2 * roots(k.lattice).size();
        const bool row_ok = static_cast<int>(total) == kummer_expect(t).total_roots &&
                            static_cast<int>(total) - 32 == 64 * extra_m[i];
        ok = ok && row_ok;
        rows.push_back({{"type", kummer_symbol(t)}, {"roots", total}, {"extra", total - 32}, {"ok", row_ok}});
        ++i;
    }
    r.passed = ok;
    r.details = {{"rows", rows}};
    return r;
}

// 3 -------------------------------------------------------------------------------------------

inline CriterionResult verify_code_search(const VerifyOptions& o) {
    CriterionResult r{3, "codes", "g(m) = f(m) by exhaustive search; one maximal class at m = 16, equivalent to V_16"};
    const int top = o.quick ? 14 : 17;
    Json rows = Json::array();
    bool ok = true;
    for (int m = 0; m <= top; ++m) {
        detail::note(o, "codes: exhaustive search m = " + std::to_string(m));
        auto res = max_admissible_dim(m);
        bool row_ok = res.dim == f_bound(m);
        Json row{{"m", m}, {"g", res.dim}, {"f", f_bound(m)}, {"maximal_classes", res.maximal.size()},
                 {"candidates", res.candidates_examined}};
        if (m == 16) {
            const bool unique = res.maximal.size() == 1 && codes_equivalent(res.maximal.front(), build_v16());
            row["unique_and_equivalent_to_v16"] = unique;
            row_ok = row_ok && unique;
        }
        row["ok"] = row_ok;
        ok = ok && row_ok;
        rows.push_back(std::move(row));
    }
    r.passed = ok;
    r.details = {{"max_m", top}, {"quick", o.quick}, {"rows", rows}};
    return r;
}

// 4 -------------------------------------------------------------------------------------------

inline CriterionResult verify_golay(const VerifyOptions&) {
    CriterionResult r{4, "golay", "Golay witness: dimension 12, weights (1, 759, 2576, 759, 1) on (0, 8, 12, 16, 24)"};
    auto g = golay_witness();
    const std::map<int, long> expect{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
    r.passed = g.dim() == 12 && g.weight_distribution() == expect && g.is_admissible();
    r.details = code_json(g);
    return r;
}

// 5 -------------------------------------------------------------------------------------------

inline CriterionResult verify_embeddings(const VerifyOptions& o) {
    CriterionResult r{5, "embeddings", "embeddings verified exactly for sigma <= 5, 4, 3, 2, 2; signature (1,21), type 2, disc (Z/2)^(2 sigma)"};
    struct Cell {
        KummerType t;
        int sigma;
    };
    std::vector<Cell> cells;
    for (auto t : all_kummer_types())
        for (int s = 1; s <= 6; ++s) cells.push_back({t, s});
    std::vector<Json> out(cells.size());
    std::vector<char> good(cells.size(), 0);
    parallel_for(cells.size(), o.jobs, [&](std::size_t i) {
        const auto [t, s] = cells[i];
        auto e = embed_any(t, s);
        const bool expected = sigma_admissible(t, s);
        const bool verified = e && e->all_verified();
        good[i] = verified == expected;
        Json j{{"type", kummer_symbol(t)}, {"sigma", s}, {"expected", expected}, {"embedded", verified}};
        if (e) {
            j["complement"] = q_symbol(e->complement);
            j["signature"] = {e->signature.first, e->signature.second};
            j["disc_two_rank"] = e->disc_two_rank;
            j["type2"] = e->type2;
            j["u_reading"] = e->u_reading;
        }
        out[i] = std::move(j);
    });
    detail::note(o, "embeddings: " + std::to_string(cells.size()) + " cells checked");
    r.passed = std::all_of(good.begin(), good.end(), [](char c) { return c != 0; });
    r.details = {{"cells", out}};
    return r;
}

// 6 -------------------------------------------------------------------------------------------

inline CriterionResult verify_cartier(const VerifyOptions& o) {
    CriterionResult r{6, "cartier", "C(dF) = 0 and C(F dF) = dF over F_4, F_16, F_64 on both families; odd-p cross-check"};
    const std::array<unsigned, 3> degrees{2, 4, 6};
    Json fields = Json::array();
    bool ok = true;
    std::size_t stream = 0;
    for (unsigned e : degrees) {
        auto k = detail::binary_field(e);
        for (auto fam : {Family::Class4, Family::Class2}) {
            std::vector<std::vector<std::string>> fails(o.cartier_samples);
            parallel_for(o.cartier_samples, o.jobs, [&](std::size_t i) {
                auto rng = sample_rng(o.seed, detail::kCartier * 100 + stream, i);
                const Poly H = random_member(fam, k, rng).polynomial();
                const Poly F = detail::random_poly(*k, rng, 4);
                const auto dF = exact_form(F, H);
                if (!cartier_p2(dF.coeff[0], H).is_zero()) fails[i].push_back("C(dF) != 0");
                const Poly fdf = F * dF.coeff[0];
                const auto c = cartier_p2(fdf, H);
                if (!(c == dF)) fails[i].push_back("C(F dF) != dF");
                if (!(cartier_general(fdf, H) == c)) fails[i].push_back("general formula disagrees");
            });
            auto t = detail::merge(fails);
            ok = ok && t.clean();
            fields.push_back({{"field", field_json(*k)}, {"family", family_name(fam)}, {"samples", o.cartier_samples},
                              {"failures", t.json()}});
            ++stream;
        }
        r.field_degrees.push_back(e);
    }
    // p = 3: C(dF) = 0 and C(F^2 dF) = dF from the general formula.
    GF f9(3, 2);
    std::vector<std::vector<std::string>> fails(o.cartier_odd_samples);
    parallel_for(o.cartier_odd_samples, o.jobs, [&](std::size_t i) {
        auto rng = sample_rng(o.seed, detail::kCartierOdd, i);
        Poly H = detail::random_poly(f9, rng, 4);
        while (in_pth_powers(H)) H = detail::random_poly(f9, rng, 4);
        const Poly F = detail::random_poly(f9, rng, 3);
        const auto dF = exact_form(F, H);
        if (!cartier_general(dF.coeff[0], H).is_zero()) fails[i].push_back("C(dF) != 0");
        if (!(cartier_general(F * F * dF.coeff[0], H) == dF)) fails[i].push_back("C(F^2 dF) != dF");
    });
    auto t = detail::merge(fails);
    ok = ok && t.clean();
    detail::note(o, "cartier: done");
    r.passed = ok;
    r.details = {{"binary", fields},
                 {"odd", {{"field", field_json(f9)}, {"samples", o.cartier_odd_samples}, {"failures", t.json()}}}};
    return r;
}

// 7 -------------------------------------------------------------------------------------------

inline CriterionResult verify_p1_derivative(const VerifyOptions& o) {
    CriterionResult r{7, "p1-derivative", "(d/dt)^(p-1) identities for random univariate polynomials, p = 2, 3, 5"};
    const std::array<std::pair<unsigned, unsigned>, 3> fields{{{2, 4}, {3, 2}, {5, 1}}};
    Json rows = Json::array();
    bool ok = true;
    for (std::size_t fi = 0; fi < fields.size(); ++fi) {
        GF k(fields[fi].first, fields[fi].second);
        std::vector<char> good(o.p1_samples, 0);
        parallel_for(o.p1_samples, o.jobs, [&](std::size_t i) {
            auto rng = sample_rng(o.seed, detail::kP1 * 10 + fi, i);
            const std::size_t deg = 1 + i % 12;
            std::vector<GF::Elem> c(deg + 1);
            for (auto& x : c) x = k.random(rng);
            good[i] = check_p1_derivative(UPoly<GF>(k, c));
        });
        const auto bad = static_cast<std::size_t>(std::count(good.begin(), good.end(), 0));
        ok = ok && bad == 0;
        rows.push_back({{"p", k.characteristic()}, {"field", field_json(k)}, {"samples", o.p1_samples}, {"failures", bad}});
    }
    r.passed = ok;
    r.details = {{"rows", rows}};
    return r;
}

// 8 -------------------------------------------------------------------------------------------

inline CriterionResult verify_z_filtration(const VerifyOptions& o) {
    CriterionResult r{8, "z-filtration", "Z-filtration dimensions (7, 6, 5, 5, 5) on family members; dim Z_3 < 5 for adversarial coefficients"};
    const std::array<unsigned, 4> degrees{4, 5, 6, 8};
    Json fams = Json::array();
    bool ok = true;
    for (auto fam : {Family::Class4, Family::Class2}) {
        const std::size_t fs = fam == Family::Class4 ? 0 : 1;
        std::vector<std::vector<std::string>> fails(o.z_samples), adv_fails(o.z_samples);
        std::vector<std::string> witness(o.z_samples);
        parallel_for(o.z_samples, o.jobs, [&](std::size_t i) {
            auto k = detail::binary_field(degrees[i % degrees.size()]);
            {
                auto rng = sample_rng(o.seed, detail::kZ * 10 + fs, i);
                const Poly H = random_spec(fam, all_branches()[i % 6], k, rng).polynomial();
                const auto d = z_filtration(H, detail::z_span(fam), 4).dims();
                if (d != std::vector<std::size_t>{7, 6, 5, 5, 5}) fails[i].push_back("dims differ from (7,6,5,5,5)");
                if (!std::is_sorted(d.rbegin(), d.rend())) fails[i].push_back("dims increase");
            }
            {
                auto rng = sample_rng(o.seed, detail::kZAdv * 10 + fs, i);
                SurfaceSpec s = random_spec(fam, all_branches()[i % 6], k, rng);
                const auto ex = detail::z_adversarial(fam)[i % 4];
                const Elem a = k->random_nonzero(rng);
                const Poly H = s.polynomial() + Poly::monomial(*k, Mono{ex.first, ex.second}, a);
                const auto d = z_filtration(H, detail::z_span(fam), 3).dims();
                if (d[3] >= 5) adv_fails[i].push_back("dim Z_3 >= 5 with " + coeff_name(ex) + " != 0");
                witness[i] = coeff_name(ex) + "=" + k->str(a);
            }
        });
        auto t = detail::merge(fails), ta = detail::merge(adv_fails);
        ok = ok && t.clean() && ta.clean();
        fams.push_back({{"family", family_name(fam)},
                        {"samples", o.z_samples},
                        {"failures", t.json()},
                        {"adversarial_samples", o.z_samples},
                        {"adversarial_failures", ta.json()},
                        {"first_adversarial", witness.empty() ? "" : witness.front()}});
    }
    r.field_degrees.assign(degrees.begin(), degrees.end());
    r.passed = ok;
    r.details = {{"families", fams}};
    return r;
}

// 9 and 10 share the sampled specs. -----------------------------------------------------------

namespace detail {

inline constexpr std::array<unsigned, 5> kSurfaceDegrees{4, 5, 6, 7, 8};

inline SurfaceSpec surface_sample(const VerifyOptions& o, Family fam, Branch b, std::size_t i) {
    const std::size_t fs = fam == Family::Class4 ? 0 : 1;
    const auto bi = static_cast<std::size_t>(b);
    auto rng = sample_rng(o.seed, kSurface * 100 + fs * 10 + bi, i);
    auto k = binary_field(kSurfaceDegrees[i % kSurfaceDegrees.size()]);
    return random_spec(fam, b, k, rng);
}

}  // namespace detail

inline CriterionResult verify_singularities(const VerifyOptions& o) {
    CriterionResult r{9, "singularities", "coefficient branch agrees with enumerated points and colengths for every branch of both families"};
    Json rows = Json::array();
    bool ok = true;
    for (auto fam : {Family::Class4, Family::Class2})
        for (auto b : all_branches()) {
            const std::size_t n = o.singularity_samples;
            std::vector<std::vector<std::string>> fails(n);
            std::vector<std::string> first(n);
            parallel_for(n, o.jobs, [&](std::size_t i) {
                const auto s = detail::surface_sample(o, fam, b, i);
                const auto rep = classify_full(s);
                if (i == 0) first[i] = s.str();
                if (rep.by_coefficients != b) fails[i].push_back("coefficient branch differs from the sampled branch");
                if (!rep.consistent) fails[i].push_back("inconsistent: " + rep.diagnostic);
                const auto prof = branch_profile(b);
                if (rep.scan.point_count() != prof.points) fails[i].push_back("point count");
                if (rep.scan.isolated && rep.affine_total() != 16) fails[i].push_back("affine colength total != 16");
                for (const auto& orb : rep.scan.orbits)
                    if (!orb.local.value || *orb.local.value != prof.colength) {
                        fails[i].push_back("local colength");
                        break;
                    }
            });
            auto t = detail::merge(fails);
            ok = ok && t.clean();
            const auto prof = branch_profile(b);
            rows.push_back({{"family", family_name(fam)},
                            {"branch", branch_label(b)},
                            {"samples", n},
                            {"points", prof.points},
                            {"colength", prof.colength},
                            {"failures", t.json()},
                            {"first_sample", first.empty() ? "" : first.front()}});
            detail::note(o, "singularities: " + family_name(fam) + " " + branch_label(b));
        }
    r.field_degrees.assign(detail::kSurfaceDegrees.begin(), detail::kSurfaceDegrees.end());
    r.passed = ok;
    r.details = {{"rows", rows}};
    return r;
}

inline CriterionResult verify_subgroups(const VerifyOptions& o) {
    CriterionResult r{10, "subgroups", "fixed-locus generators additive on every RDP branch; class-2 additivity fails exactly when h07 != 0"};
    Json rows = Json::array();
    bool ok = true;
    for (auto fam : {Family::Class4, Family::Class2})
        for (auto b : all_branches()) {
            if (b == Branch::NonRDP) continue;
            const std::size_t n = o.singularity_samples;
            std::vector<std::vector<std::string>> fails(n);
            parallel_for(n, o.jobs, [&](std::size_t i) {
                const auto s = detail::surface_sample(o, fam, b, i);
                const auto d = covering_derivation(s);
                const auto fl = fixed_locus_subgroup_check(d);
                const auto v = classify_derivations(d);
                if (!d.closure_verified) fails[i].push_back("D^2 != cD");
                if (!fl.additive) fails[i].push_back("not additive");
                if (fl.order != 16) fails[i].push_back("order != 16");
                if (!v.all()) fails[i].push_back("derivation conditions");
            });
            auto t = detail::merge(fails);
            ok = ok && t.clean();
            rows.push_back({{"family", family_name(fam)}, {"branch", branch_label(b)}, {"samples", n}, {"failures", t.json()}});
        }
    // class 2, both sides of h07
    Json sides = Json::array();
    for (int side = 0; side < 2; ++side) {
        const std::size_t n = o.h07_samples;
        std::vector<std::vector<std::string>> fails(n);
        std::vector<std::string> witness(n);
        parallel_for(n, o.jobs, [&](std::size_t i) {
            auto rng = sample_rng(o.seed, detail::kH07 * 10 + static_cast<std::uint64_t>(side), i);
            auto k = detail::binary_field(detail::kSurfaceDegrees[i % detail::kSurfaceDegrees.size()]);
            SurfaceSpec s = random_spec(Family::Class2, all_branches()[i % 5], k, rng);
            if (side == 1) s.set(0, 7, k->random_nonzero(rng));
            const auto d = covering_derivation(s);
            const auto fl = fixed_locus_subgroup_check(d);
            const auto v = classify_derivations(d);
            if (fl.additive != (side == 0)) fails[i].push_back(side ? "additive despite h07 != 0" : "not additive with h07 = 0");
            if (side == 1) {
                if (fl.witness_degrees.empty()) fails[i].push_back("no non-additive degree witnessed");
                if (!(v.closure && v.divisor && v.isolated_fixed)) fails[i].push_back("(i)-(iii) should hold");
                if (v.subgroup) fails[i].push_back("(iv) should fail");
                if (i == 0) {
                    std::string w;
                    for (auto e : fl.witness_degrees) w += (w.empty() ? "" : ",") + std::to_string(e);
                    witness[i] = s.str() + " ; witness degrees " + w;
                }
            }
        });
        auto t = detail::merge(fails);
        ok = ok && t.clean();
        sides.push_back({{"h07_nonzero", side == 1}, {"samples", n}, {"failures", t.json()}, {"first_witness", witness.front()}});
    }
    r.field_degrees.assign(detail::kSurfaceDegrees.begin(), detail::kSurfaceDegrees.end());
    r.passed = ok;
    r.details = {{"rdp_branches", rows}, {"h07", sides}};
    return r;
}

// 11 ------------------------------------------------------------------------------------------

inline CriterionResult verify_leq5_criterion(const VerifyOptions&) {
    CriterionResult r{11, "leq5", "max f(m) + b - n_B = 5 over index <= 16, equality exactly on the five Kummer configurations"};
    auto res = verify_leq5(16);
    Json eq = Json::array();
    for (const auto& c : res.equality_cases) eq.push_back(c.str());
    auto expect = kummer_configurations();
    std::sort(expect.begin(), expect.end(), [](const RdpCollection& a, const RdpCollection& b) { return a.str() < b.str(); });
    r.passed = res.max_value == 5 && res.equality_cases == expect;
    r.details = {{"max_value", res.max_value}, {"equality_cases", eq}, {"collections", res.collections}};
    return r;
}

// 12 ------------------------------------------------------------------------------------------

inline CriterionResult verify_table2(const VerifyOptions&) {
    CriterionResult r{12, "table2", "E8^0 dims (2,3,4) with B-index 3; D_N^r closed form monotone and stabilizing for N <= 20"};
    bool ok = true;
    const auto e8 = rdp('E', 8, 0);
    const bool e8_ok = b_index(e8) == 3 && dim_b_bar(e8, 1) == 2 && dim_b_bar(e8, 2) == 3 && dim_b_bar(e8, 3) == 4;
    ok = ok && e8_ok;
    std::size_t d_types = 0;
    Json bad = Json::array();
    for (int n = 4; n <= 20; ++n)
        for (int r2 = n % 2; r2 <= n - 2; r2 += 2) {
            const auto t = rdp('D', n, r2);
            ++d_types;
            const int nb = b_index(t);
            const long long m = (n - r2) / 2 - 1;
            bool t_ok = true;
            for (int k = 0; k <= 8; ++k) {
                const int d = dim_b_bar(t, k);
                // closed form without the cap, evaluated exactly
                const long long raw = k == 0 ? 0 : m - m / (1LL << k);
                if (d != raw && k <= nb) t_ok = false;
                if (k > 0 && d < dim_b_bar(t, k - 1)) t_ok = false;
                if (k >= nb && d != dim_b_bar(t, nb)) t_ok = false;
                if (k >= nb && d != raw) t_ok = false;  // the closed form itself is constant from n_B on
            }
            if (nb > 0 && dim_b_bar(t, nb - 1) >= dim_b_bar(t, nb)) t_ok = false;  // n_B is the first stable index
            if (!t_ok) bad.push_back(t.str());
            ok = ok && t_ok;
        }
    const auto d16 = rdp('D', 16, 0);
    const bool d16_ok = dim_b_bar(d16, 1) == 4 && dim_b_bar(d16, 2) == 6 && dim_b_bar(d16, 3) == 7;
    ok = ok && d16_ok;
    r.passed = ok;
    r.details = {{"E8^0", rdp_table_json(e8, 4)}, {"D16^0", rdp_table_json(d16, 5)}, {"d_types_checked", d_types},
                 {"d_types_failing", bad}};
    return r;
}

// Suite -----------------------------------------------------------------------------------------

using CriterionFn = std::function<CriterionResult(const VerifyOptions&)>;

inline const std::vector<std::pair<std::string, CriterionFn>>& criteria() {
    static const std::vector<std::pair<std::string, CriterionFn>> c{
        {"table1", verify_table1},          {"roots", verify_root_counts},
        {"codes", verify_code_search},      {"golay", verify_golay},
        {"embeddings", verify_embeddings},  {"cartier", verify_cartier},
        {"p1-derivative", verify_p1_derivative}, {"z-filtration", verify_z_filtration},
        {"singularities", verify_singularities}, {"subgroups", verify_subgroups},
        {"leq5", verify_leq5_criterion},    {"table2", verify_table2},
    };
    return c;
}

/// Any exception counts as a failed criterion and is recorded in the details.
inline CriterionResult run_criterion(int number, const std::string& id, const CriterionFn& fn, const VerifyOptions& o) {
    try {
        return fn(o);
    } catch (const std::exception& e) {
        CriterionResult r{number, id, "criterion raised an exception"};
        r.details = {{"exception", e.what()}};
        return r;
    }
}

inline Json criterion_json(const CriterionResult& c) {
    return {{"number", c.number}, {"id", c.id}, {"statement", c.statement}, {"passed", c.passed}, {"details", c.details}};
}

inline void add_to_report(Report& rep, const CriterionResult& c) {
    rep.claim(c.id, c.statement, c.passed);
    for (unsigned e : c.field_degrees) rep.field_degree(e);
    rep.results()["criteria"].push_back(criterion_json(c));
}

/// Criteria 1 to 12 serialized as one JSON document.
inline std::string suite_fingerprint(const VerifyOptions& o) {
    Json all = Json::array();
    int n = 0;
    for (const auto& [name, fn] : criteria()) all.push_back(criterion_json(run_criterion(++n, name, fn, o)));
    return all.dump();
}

// 13 ------------------------------------------------------------------------------------------

/// Two quick runs with the same seed, one single-threaded and one with the requested workers,
/// must serialize identically.
inline CriterionResult verify_determinism(const VerifyOptions& o) {
    CriterionResult r{13, "determinism", "two runs with the same seed give byte-identical reports"};
    VerifyOptions a = o, b = o;
    a.quick = b.quick = true;
    a.progress = b.progress = nullptr;
    a.jobs = 1;
    b.jobs = std::max(2u, o.jobs);
    detail::note(o, "determinism: first run");
    const std::string x = suite_fingerprint(a);
    detail::note(o, "determinism: second run");
    const std::string y = suite_fingerprint(b);
    r.passed = x == y;
    r.details = {{"bytes", x.size()}, {"identical", x == y}};
    return r;
}

inline Report verify_all(const VerifyOptions& o, std::vector<std::string> command, bool with_determinism = true) {
    Report rep(std::move(command), o.seed);
    rep.inputs() = {{"quick", o.quick}};
    rep.results()["criteria"] = Json::array();
    int n = 0;
    for (const auto& [name, fn] : criteria()) {
        detail::note(o, "running " + name);
        add_to_report(rep, run_criterion(++n, name, fn, o));
    }
    if (with_determinism) add_to_report(rep, run_criterion(13, "determinism", verify_determinism, o));
    return rep;
}

}  // namespace kummerlab
