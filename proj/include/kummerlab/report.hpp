/*
 * JSON encodings and the report envelope shared by every command.
 * Keys serialize sorted and lists come out in a fixed order, so equal inputs give
 * byte-identical output.
 */
#pragma once

#include "kummerlab/codes.hpp"
#include "kummerlab/kummer.hpp"
#include "kummerlab/rdp.hpp"
#include "kummerlab/surface.hpp"

#include <nlohmann/json.hpp>

#include <set>
#include <string>
#include <vector>

namespace kummerlab {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "1.0.0";

/// Big integers go out as JSON numbers when they fit in 64 bits and as decimal strings otherwise.
inline Json big_json(const BigInt& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

inline Json rational_json(const Rational& q) { return to_string(q); }

inline Json int_matrix_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(big_json(m(i, j)));
        rows.push_back(std::move(r));
    }
    return rows;
}

inline Json rat_vec_json(const RatVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rational_json(x));
    return a;
}

// ---------------------------------------------------------------------------
// Lattices: {"gram": [[int]], "labels": [string]?}

inline Json lattice_json(const Lattice& l) {
    Json j{{"rank", l.rank()}, {"gram", int_matrix_json(l.gram())}};
    if (!l.labels().empty()) j["labels"] = l.labels();
    return j;
}

inline Lattice lattice_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("gram") || !j["gram"].is_array())
        throw std::invalid_argument("lattice file needs a \"gram\" array");
    const auto& g = j["gram"];
    const std::size_t n = g.size();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!g[i].is_array() || g[i].size() != n) throw std::invalid_argument("Gram matrix must be square");
        for (std::size_t k = 0; k < n; ++k) {
            const auto& e = g[i][k];
            if (e.is_number_integer()) m(i, k) = BigInt(e.get<std::int64_t>());
            else if (e.is_string()) m(i, k) = BigInt(e.get<std::string>());
            else throw std::invalid_argument("Gram entries must be integers");
        }
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return Lattice(m, labels);
}

inline Json disc_group_json(const DiscriminantGroup& d) {
    Json gens = Json::array();
    for (std::size_t i = 0; i < d.generators.size(); ++i)
        gens.push_back({{"class", rat_vec_json(d.generators[i])},
                        {"order", big_json(d.orders[i])},
                        {"q", rational_json(d.qvalues[i])}});
    return {{"order", big_json(d.order())}, {"generators", gens}};
}

inline Json ade_json(const std::vector<AdeComponent>& comps) {
    Json a = Json::array();
    for (const auto& c : comps) a.push_back(c.symbol());
    return a;
}

// ---------------------------------------------------------------------------
// Codes: {"m": int, "basis": ["bitstring", ...]}

inline Json code_json(const BinaryCode& c) {
    Json basis = Json::array();
    for (Word w : c.basis()) basis.push_back(c.bitstring(w));
    Json wd = Json::object();
    for (auto [w, n] : c.weight_distribution()) wd[std::to_string(w)] = n;
    return {{"m", c.ground_size()}, {"dim", c.dim()}, {"basis", basis}, {"weights", wd}};
}

inline BinaryCode code_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("basis")) throw std::invalid_argument("code file needs \"m\" and \"basis\"");
    const int m = j["m"].get<int>();
    std::vector<Word> gens;
    for (const auto& b : j["basis"]) {
        const auto s = b.get<std::string>();
        if (static_cast<int>(s.size()) != m) throw std::invalid_argument("basis word length differs from m");
        gens.push_back(parse_bitstring(s));
    }
    return BinaryCode(m, gens);
}

// ---------------------------------------------------------------------------
// Fields and polynomials. Elements are little-endian digit strings in the modulus basis.

inline Json field_json(const GF& k) {
    return {{"p", k.characteristic()}, {"e", k.degree()}, {"modulus", k.modulus()}};
}

inline Json ext_elem_json(const ExtField& k, const ExtField::Elem& a) {
    Json r = Json::array();
    for (std::size_t i = 0; i < k.degree(); ++i) r.push_back(k.base().str(i < a.size() ? a[i] : k.base().zero()));
    return r;
}

inline Json poly_json(const Poly& p) {
    Json terms = Json::array();
    for (const auto& [m, a] : p.terms()) terms.push_back(Json::array({m[0], m[1], p.field().str(a)}));
    return terms;
}

inline Json spec_json(const SurfaceSpec& s) {
    Json c = Json::object();
    for (const auto& [e, a] : s.h) c[coeff_name(e)] = s.k().str(a);
    return {{"family", family_name(s.family)},
            {"field", field_json(s.k())},
            {"coefficients", c},
            {"normalized", s.normalized},
            {"polynomial", s.str()}};
}

inline Json singularity_json(const SingularityReport& r) {
    Json orbits = Json::array();
    for (const auto& o : r.scan.orbits) {
        Json j{{"residue_degree", o.residue->degree()},
               {"points", o.degree},
               {"x", ext_elem_json(*o.residue, o.x)},
               {"y", ext_elem_json(*o.residue, o.y)},
               {"resultant_multiplicity", o.resultant_multiplicity}};
        if (o.local.value) {
            j["colength"] = *o.local.value;
            j["tyurina_double_cover"] = 2 * *o.local.value;
        } else {
            j["colength"] = nullptr;
        }
        j["truncation"] = o.local.truncation;
        orbits.push_back(std::move(j));
    }
    Json j{{"branch", branch_label(r.by_coefficients)},
           {"isolated", r.scan.isolated},
           {"projection_lambda_index", r.scan.projection_index},
           {"point_count", r.scan.point_count()},
           {"affine_colength_total", r.affine_total()},
           {"orbits", orbits},
           {"colengths_agree", r.colengths_agree},
           {"translations_ok", r.translations_ok},
           {"consistent", r.consistent}};
    if (r.observed) j["observed_profile"] = {{"points", r.observed->points}, {"colength", r.observed->colength}};
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    return j;
}

inline Json derivation_json(const DerivationSpec& d) {
    return {{"family", family_name(d.family)},
            {"vars", d.vars()},
            {"f", poly_json(d.f)},
            {"g", poly_json(d.g)},
            {"f_text", d.f.str(d.vars())},
            {"g_text", d.g.str(d.vars())},
            {"c", d.field->str(d.c)},
            {"closure_verified", d.closure_verified}};
}

inline Json fixed_locus_json(const FixedLocusReport& r, const std::vector<std::string>& vars) {
    Json gens = Json::array();
    for (const auto& g : r.generators) gens.push_back(g.str(vars));
    return {{"generators", gens}, {"additive", r.additive}, {"order", r.order}, {"witness_degrees", r.witness_degrees}};
}

inline Json verdict_json(const DerivationVerdict& v) {
    Json j{{"closure", v.closure},
           {"divisor", v.divisor},
           {"isolated_fixed", v.isolated_fixed},
           {"subgroup", v.subgroup},
           {"hamiltonian", v.hamiltonian},
           {"notes", v.notes}};
    if (v.recovered) j["recovered"] = spec_json(*v.recovered);
    return j;
}

// ---------------------------------------------------------------------------
// Kummer lattices

inline Json kummer_json(const KummerLattice& k) {
    return {{"type", kummer_symbol(k.type)},
            {"ade", ade_string(k.ade)},
            {"roots", 2 * k.root_pairs.size()},
            {"index_over_16A1", big_json(k.index_over_a16)},
            {"index_over_roots", big_json(k.index_over_roots)},
            {"discriminant_group", disc_group_json(k.disc)},
            {"lattice", lattice_json(k.lattice)}};
}

inline Json embedding_json(const EmbeddingReport& r) {
    return {{"type", kummer_symbol(r.type)},
            {"complement", q_symbol(r.complement)},
            {"sigma", r.sigma},
            {"glue_rank", r.glue_rank},
            {"u_reading", r.u_reading},
            {"notes", r.notes},
            {"even", r.even},
            {"signature", {r.signature.first, r.signature.second}},
            {"two_elementary", r.two_elementary},
            {"type2", r.type2},
            {"disc_two_rank", r.disc_two_rank},
            {"kummer_saturated", r.kummer_saturated},
            {"complement_saturated", r.complement_saturated},
            {"complement_two_elementary_type2", r.complement_two_elementary_type2},
            {"roots_split", r.roots_split},
            {"complement_root_pairs", r.complement_root_pairs},
            {"all_verified", r.all_verified()},
            {"gram", int_matrix_json(r.ambient.gram())}};
}

// ---------------------------------------------------------------------------
// RDP data

inline Json rdp_table_json(const RdpType& t, int max_n) {
    Json dims = Json::array();
    for (int n = 0; n <= max_n; ++n) dims.push_back(dim_b_bar(t, n));
    Json j{{"type", t.str()}, {"b_index", b_index(t)}, {"dim_b_bar", dims}};
    try {
        auto v = mzbz(t);
        j["i"] = v.i;
        j["m"] = v.m;
        j["b"] = v.b;
    } catch (const std::invalid_argument&) {
        j["i"] = t.n;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Report envelope

struct Claim {
    std::string id;
    std::string statement;
    bool passed = false;
};

class Report {
public:
    Report(std::vector<std::string> command, std::uint64_t seed) : command_(std::move(command)), seed_(seed) {}

    Json& inputs() { return inputs_; }
    Json& results() { return results_; }

    void claim(std::string id, std::string statement, bool passed) {
        claims_.push_back({std::move(id), std::move(statement), passed});
    }
    void field_degree(unsigned e) { degrees_.insert(e); }

    bool verified() const {
        for (const auto& c : claims_)
            if (!c.passed) return false;
        return true;
    }
    const std::vector<Claim>& claims() const { return claims_; }

    Json json() const {
        Json cl = Json::array();
        for (const auto& c : claims_) cl.push_back({{"id", c.id}, {"statement", c.statement}, {"passed", c.passed}});
        return {{"tool", "kummerlab"},
                {"version", kToolVersion},
                {"command", command_},
                {"inputs", inputs_.is_null() ? Json::object() : inputs_},
                {"seeds", {{"base", seed_}}},
                {"field_degrees", std::vector<unsigned>(degrees_.begin(), degrees_.end())},
                {"results", results_.is_null() ? Json::object() : results_},
                {"claims", cl},
                {"verified", verified()}};
    }

    std::string dump() const { return json().dump(2) + "\n"; }

private:
    std::vector<std::string> command_;
    std::uint64_t seed_;
    Json inputs_, results_;
    std::vector<Claim> claims_;
    std::set<unsigned> degrees_;
};

}  // namespace kummerlab
