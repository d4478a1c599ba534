// `kummerlab` command line. Exit status: 0 when every claim holds, 1 on a failed claim,
// 2 on usage or input errors.
#pragma once

#include "kummerlab/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace kummerlab::cli {

enum Exit : int { kOk = 0, kClaimFailed = 1, kUsage = 2 };

/// Input problems detected after parsing; reported with exit status 2.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline std::uint64_t parse_seed(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw InputError("seed '" + s + "' is not a non-negative integer");
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos, 10);
    } catch (const std::exception&) {
        throw InputError("seed '" + s + "' is not a non-negative integer");
    }
    if (pos != s.size()) throw InputError("seed '" + s + "' is not a non-negative integer");
    return v;
}

/// Seed precedence: --seed, then KUMMERLAB_SEED, then the built-in default.
inline std::uint64_t resolve_seed(const std::string& flag) {
    if (!flag.empty()) return parse_seed(flag);
    if (const char* env = std::getenv("KUMMERLAB_SEED"); env && *env) return parse_seed(env);
    return kDefaultSeed;
}

/// "e=6", "6", "p=2,e=6". Surfaces live in characteristic 2 only.
inline FieldPtr parse_field(const std::string& spec) {
    unsigned p = 2, e = 0;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto eq = part.find('=');
        std::string key = eq == std::string::npos ? "e" : part.substr(0, eq);
        std::string val = eq == std::string::npos ? part : part.substr(eq + 1);
        unsigned long v = 0;
        try {
            std::size_t pos = 0;
            v = std::stoul(val, &pos);
            if (pos != val.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw InputError("malformed field spec '" + spec + "'");
        }
        if (key == "e") e = static_cast<unsigned>(v);
        else if (key == "p") p = static_cast<unsigned>(v);
        else throw InputError("unknown field parameter '" + key + "'");
    }
    if (p != 2) throw InputError("surface commands need characteristic 2");
    if (e == 0 || e > 63) throw InputError("field degree e must lie in 1..63");
    return std::make_shared<const GF>(2, e);
}

/// "h30=010011,h11=1": values are e-digit little-endian strings; "0" and "1" are accepted as shorthands.
inline std::map<std::string, Elem> parse_coeffs(const std::string& s, const GF& k) {
    std::map<std::string, Elem> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto eq = part.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("malformed coefficient '" + part + "'");
        const std::string name = part.substr(0, eq), val = part.substr(eq + 1);
        if (out.count(name)) throw InputError("coefficient " + name + " given twice");
        Elem v = 0;
        if (val == "0" || val == "1") v = val == "1" ? 1 : 0;
        else {
            try {
                v = k.parse(val);
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
        }
        out[name] = v;
    }
    return out;
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

struct Globals {
    std::string seed;
    unsigned jobs = 0;
    bool quick = false;
    bool verbose = false;
    std::string out = "json";
};

/// `--out json` (or `--report json`) writes to stdout; anything else names a file.
inline void emit(const Report& rep, const std::string& out, std::ostream& stdout_) {
    const std::string text = rep.dump();
    if (out.empty() || out == "json" || out == "-") {
        stdout_ << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw InputError("cannot write '" + out + "'");
    f << text;
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"kummerlab: exact checks for Kummer lattices, binary codes, char-2 surfaces and RDP invariants",
                 "kummerlab"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1, 1);
    Globals g;
    auto add_globals = [&](CLI::App* sc) {
        sc->add_option("--seed", g.seed, "base seed (default: KUMMERLAB_SEED or built-in)");
        sc->add_option("--jobs", g.jobs, "worker threads (default: available parallelism)");
        sc->add_flag("--quick", g.quick, "reduced campaign");
        sc->add_flag("-v,--verbose", g.verbose, "progress on stderr");
        sc->add_option("--out,--report", g.out, "'json' for stdout, otherwise an output file path");
    };

    // lattice
    auto* lat = app.add_subcommand("lattice", "integral lattice utilities");
    lat->require_subcommand(1, 1);
    std::string lat_file;
    bool lat_roots = false;
    auto* lat_info = lat->add_subcommand("info", "discriminant, signature, discriminant group and 2-elementary flags");
    lat_info->add_option("--file", lat_file, "lattice JSON {\"gram\": [[int]], \"labels\": [string]?}")->required();
    lat_info->add_flag("--roots", lat_roots, "also enumerate roots and the ADE type (definite lattices)");
    add_globals(lat_info);

    // codes
    auto* codes = app.add_subcommand("codes", "admissible binary codes");
    codes->require_subcommand(1, 1);
    int code_m = 16, code_max = 17;
    bool exhaustive = false;
    std::string code_file;
    auto* c_search = codes->add_subcommand("search", "maximal admissible dimension for one m");
    c_search->add_option("--m", code_m, "ground set size")->check(CLI::Range(0, 24));
    c_search->add_flag("--exhaustive", exhaustive, "exhaustive search (m <= 17); otherwise witness mode for m > 17");
    add_globals(c_search);
    auto* c_table = codes->add_subcommand("g-table", "g(m) against f(m) for m = 0..max");
    c_table->add_option("--max", code_max, "largest m")->check(CLI::Range(0, 24));
    add_globals(c_table);
    auto* c_golay = codes->add_subcommand("golay", "the extended Golay witness");
    add_globals(c_golay);
    auto* c_check = codes->add_subcommand("check", "admissibility and overlattice of a code file");
    c_check->add_option("--file", code_file, "code JSON {\"m\": int, \"basis\": [bitstring]}")->required();
    add_globals(c_check);

    // kummer
    auto* kum = app.add_subcommand("kummer", "Kummer lattices and their embeddings");
    kum->require_subcommand(1, 1);
    std::string ktype = "16A1", complement = "Q4";
    int sigma = 1;
    bool extended = false;
    auto* k_build = kum->add_subcommand("build", "build one Kummer lattice");
    k_build->add_option("--type", ktype, "16A1, 4D4, 2D8, 1D16 or 2E8")->required();
    add_globals(k_build);
    auto* k_embed = kum->add_subcommand("embed", "embed into the rank-22 lattice of Artin invariant sigma");
    k_embed->add_option("--type", ktype, "Kummer type")->required();
    k_embed->add_option("--sigma", sigma, "Artin invariant")->required()->check(CLI::Range(0, 10));
    k_embed->add_option("--complement", complement, "Q4 or Q2");
    k_embed->add_flag("--extended", extended, "use the alternative Q2 glue data");
    add_globals(k_embed);

    // surface
    auto* surf = app.add_subcommand("surface", "the two char-2 surface families");
    surf->require_subcommand(1, 1);
    std::string family = "class4", field = "e=6", coeffs, expect, branch;
    auto add_surface_inputs = [&](CLI::App* sc) {
        sc->add_option("--family", family, "class4 or class2");
        sc->add_option("--field", field, "F_{2^e} as e=<degree>");
        sc->add_option("--coeffs", coeffs, "comma-separated hIJ=<bits>");
    };
    auto* s_classify = surf->add_subcommand("classify", "branch from coefficients, cross-checked by point enumeration");
    add_surface_inputs(s_classify);
    s_classify->add_option("--expect", expect, "assert this branch label");
    add_globals(s_classify);
    auto* s_deriv = surf->add_subcommand("derivation-check", "covering derivation, fixed locus and conditions (i)-(iv)");
    add_surface_inputs(s_deriv);
    add_globals(s_deriv);
    auto* s_sample = surf->add_subcommand("sample", "random member of a branch, classified");
    s_sample->add_option("--family", family, "class4 or class2");
    s_sample->add_option("--field", field, "F_{2^e} as e=<degree>");
    s_sample->add_option("--branch", branch, "16A1, 4D4, 2D8, 1D16, 2E8 or non-RDP")->required();
    add_globals(s_sample);

    // rdp
    auto* rdpc = app.add_subcommand("rdp", "RDP invariants");
    rdpc->require_subcommand(1, 1);
    std::string rtype = "D16r0", collection;
    int max_n = 5, max_index = 16;
    auto* r_leq5 = rdpc->add_subcommand("verify-leq5", "exhaustive check of f(m) + b - n_B <= 5");
    r_leq5->add_option("--max-index", max_index, "bound on the total index")->check(CLI::Range(0, 24));
    add_globals(r_leq5);
    auto* r_table = rdpc->add_subcommand("table", "dim B-bar_n, B-index and (i, m, b) of one type");
    r_table->add_option("--type", rtype, "e.g. D16r0, D5r1/2, E8r0, A3")->required();
    r_table->add_option("--max-n", max_n, "largest n")->check(CLI::Range(0, 64));
    add_globals(r_table);
    auto* r_bound = rdpc->add_subcommand("bound", "f(m) + b - n_B and dim H^0(B_n) for a collection");
    r_bound->add_option("--collection", collection, "e.g. 13A1+D4r0")->required();
    r_bound->add_option("--max-n", max_n, "largest n for dim H^0(B_n)")->check(CLI::Range(0, 64));
    add_globals(r_bound);

    // verify
    auto* ver = app.add_subcommand("verify", "acceptance campaign");
    std::string which = "all";
    std::vector<std::string> names{"all", "determinism"};
    for (const auto& [n, f] : criteria()) names.push_back(n);
    ver->add_option("which", which, "all, determinism, or one criterion")->check(CLI::IsMember(names));
    add_globals(ver);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        (void)e;
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "kummerlab: " << e.what() << "\n";
        return kUsage;
    }

    std::vector<std::string> command{"kummerlab"};
    command.insert(command.end(), args.begin(), args.end());

    try {
        const std::uint64_t seed = resolve_seed(g.seed);
        const unsigned jobs = g.jobs ? g.jobs : default_jobs();
        std::ostream* progress = g.verbose ? &err : nullptr;
        Report rep(command, seed);

        if (lat_info->parsed()) {
            Lattice l = lattice_from_json(read_json_file(lat_file));
            auto [pos, neg] = signature(l);
            rep.inputs() = lattice_json(l);
            Json r{{"discriminant", big_json(discriminant(l))}, {"signature", {pos, neg}}, {"even", l.is_even()}};
            auto dg = discriminant_group(l);
            r["discriminant_group"] = disc_group_json(dg);
            if (l.is_even()) {
                auto f = is_two_elementary_type2(l);
                r["two_elementary"] = f.elementary;
                r["type2"] = f.type2;
            }
            rep.claim("disc-order", "discriminant group order equals |discriminant|", dg.order() == abs(discriminant(l)));
            if (lat_roots) {
                auto rs = roots(l);
                r["roots"] = 2 * rs.size();
                r["ade"] = ade_json(ade_type(l, rs));
            }
            rep.results() = r;
        } else if (c_search->parsed()) {
            rep.inputs() = {{"m", code_m}, {"exhaustive", exhaustive || code_m <= 17}};
            if (code_m <= 17) {
                auto res = max_admissible_dim(code_m);
                Json cl = Json::array();
                for (const auto& c : res.maximal) cl.push_back(code_json(c));
                rep.results() = {{"g", res.dim}, {"f", f_bound(code_m)}, {"classes_per_dim", res.classes_per_dim},
                                 {"maximal", cl}, {"candidates", res.candidates_examined}};
                rep.claim("g-equals-f", "g(m) = f(m)", res.dim == f_bound(code_m));
                if (code_m == 16)
                    rep.claim("v16-unique", "a single maximal class at m = 16, equivalent to V_16",
                              res.maximal.size() == 1 && codes_equivalent(res.maximal.front(), build_v16()));
            } else {
                if (exhaustive) throw InputError("exhaustive mode supports m <= 17");
                auto w = witness_bound(code_m, 17, max_admissible_dim(17).dim);
                rep.results() = {{"lower", w.lower}, {"upper", w.upper}, {"witness", code_json(w.witness)}, {"f", f_bound(code_m)}};
                rep.claim("witness-admissible", "the witness code is admissible", w.witness.is_admissible());
                rep.claim("f-bracketed", "witness dimension <= f(m) <= chain bound",
                          w.lower <= f_bound(code_m) && f_bound(code_m) <= w.upper);
            }
        } else if (c_table->parsed()) {
            rep.inputs() = {{"max", code_max}};
            Json rows = Json::array();
            bool ok = true;
            int g17 = -1;
            for (int m = 0; m <= code_max; ++m) {
                if (progress) *progress << "[kummerlab] m = " << m << std::endl;
                if (m <= 17) {
                    auto res = max_admissible_dim(m);
                    if (m == 17) g17 = res.dim;
                    rows.push_back({{"m", m}, {"g", res.dim}, {"f", f_bound(m)}, {"mode", "exhaustive"}});
                    ok = ok && res.dim == f_bound(m);
                } else {
                    auto w = witness_bound(m, 17, g17);
                    rows.push_back({{"m", m}, {"g_lower", w.lower}, {"g_upper", w.upper}, {"f", f_bound(m)}, {"mode", "witness"}});
                    ok = ok && w.lower <= f_bound(m) && f_bound(m) <= w.upper;
                }
            }
            rep.results() = {{"rows", rows}};
            rep.claim("g-table", "g(m) = f(m) exhaustively, bracketed by witnesses above 17", ok);
        } else if (c_golay->parsed()) {
            auto c = verify_golay({});
            rep.results() = c.details;
            rep.claim(c.id, c.statement, c.passed);
        } else if (c_check->parsed()) {
            BinaryCode c = code_from_json(read_json_file(code_file));
            rep.inputs() = code_json(c);
            const bool adm = c.is_admissible();
            Json r{{"admissible", adm}, {"dim", c.dim()}, {"f", f_bound(c.ground_size())}};
            if (adm) {
                auto ov = code_to_overlattice(c);
                r["overlattice_root_pairs"] = ov.root_pairs;
            }
            rep.results() = r;
            rep.claim("admissible", "every nonzero word has weight divisible by 4 and not equal to 4", adm);
            rep.claim("dim-bound", "dim <= f(m)", c.dim() <= f_bound(c.ground_size()));
        } else if (k_build->parsed()) {
            const auto t = parse_kummer_type(ktype);
            auto k = build_kummer(t);
            auto ex = kummer_expect(t);
            rep.inputs() = {{"type", kummer_symbol(t)}};
            rep.results() = kummer_json(k);
            rep.claim("ade", "root sublattice type", ade_string(k.ade) == ex.ade);
            rep.claim("index-roots", "index over the root lattice", k.index_over_roots == (BigInt(1) << ex.log_index_over_roots));
            rep.claim("index-16A1", "index over K(16A1)", k.index_over_a16 == (BigInt(1) << ex.log_index_over_a16));
            rep.claim("root-count", "number of roots", static_cast<int>(2 * k.root_pairs.size()) == ex.total_roots);
        } else if (k_embed->parsed()) {
            const auto t = parse_kummer_type(ktype);
            const auto q = parse_q_type(complement);
            rep.inputs() = {{"type", kummer_symbol(t)}, {"sigma", sigma}, {"complement", q_symbol(q)}, {"extended", extended}};
            try {
                auto e = embed_kummer(t, sigma, q, extended);
                rep.results() = embedding_json(e);
                rep.claim("embedding-verified", "all embedding checks hold", e.all_verified());
            } catch (const EmbeddingError& e) {
                rep.results() = {{"embedded", false}, {"reason", e.what()}};
                rep.claim("embedding-exists", "an embedding with these parameters exists", false);
            }
        } else if (s_classify->parsed() || s_deriv->parsed()) {
            const auto fam = parse_family(family);
            auto k = parse_field(field);
            rep.field_degree(k->degree());
            auto s = make_spec(fam, k, parse_coeffs(coeffs, *k));
            rep.inputs() = spec_json(s);
            if (s_classify->parsed()) {
                auto r = classify_full(s);
                rep.results() = singularity_json(r);
                for (const auto& o : r.scan.orbits) rep.field_degree(static_cast<unsigned>(k->degree() * o.residue->degree()));
                rep.claim("cross-validation", "coefficient branch agrees with enumerated points and colengths", r.consistent);
                if (!expect.empty())
                    rep.claim("expected-branch", "branch equals " + expect, r.by_coefficients == parse_branch(expect));
            } else {
                auto d = covering_derivation(s);
                auto fl = fixed_locus_subgroup_check(d);
                auto v = classify_derivations(d);
                rep.results() = {{"derivation", derivation_json(d)},
                                 {"fixed_locus", fixed_locus_json(fl, d.vars())},
                                 {"conditions", verdict_json(v)}};
                rep.claim("closure", "D^2 = cD", v.closure);
                rep.claim("divisor", "degree and F_4-stability constraints", v.divisor);
                rep.claim("isolated-fixed", "coprime coefficients", v.isolated_fixed);
                rep.claim("hamiltonian", "D is Hamiltonian for a member of the family", v.hamiltonian);
                rep.claim("subgroup", "fixed locus is an additive subgroup scheme", v.subgroup);
            }
        } else if (s_sample->parsed()) {
            const auto fam = parse_family(family);
            auto k = parse_field(field);
            rep.field_degree(k->degree());
            const auto b = parse_branch(branch);
            auto rng = sample_rng(seed, 0, 0);
            auto s = random_spec(fam, b, k, rng);
            auto r = classify_full(s);
            rep.inputs() = {{"family", family_name(fam)}, {"field", field_json(*k)}, {"branch", branch_label(b)}};
            rep.results() = {{"spec", spec_json(s)}, {"classification", singularity_json(r)}};
            rep.claim("branch", "sampled spec lands in the requested branch", r.by_coefficients == b);
            rep.claim("cross-validation", "coefficient branch agrees with enumerated points and colengths", r.consistent);
        } else if (r_leq5->parsed()) {
            auto res = verify_leq5(max_index);
            Json eq = Json::array();
            for (const auto& c : res.equality_cases) eq.push_back(c.str());
            rep.inputs() = {{"max_index", max_index}};
            rep.results() = {{"max_value", res.max_value}, {"equality_cases", eq}, {"collections", res.collections}};
            rep.claim("at-most-5", "f(m) + b - n_B <= 5", res.max_value <= 5);
            if (max_index == 16) {
                auto expect_eq = kummer_configurations();
                std::sort(expect_eq.begin(), expect_eq.end(),
                          [](const RdpCollection& a, const RdpCollection& b) { return a.str() < b.str(); });
                rep.claim("equality-set", "equality exactly on 16A1, 4D4^0, 2D8^0, 1D16^0, 2E8^0",
                          res.max_value == 5 && res.equality_cases == expect_eq);
            }
        } else if (r_table->parsed()) {
            const auto t = parse_rdp(rtype);
            rep.inputs() = {{"type", t.str()}, {"max_n", max_n}};
            rep.results() = rdp_table_json(t, max_n);
            bool mono = true;
            for (int n = 1; n <= max_n; ++n) mono = mono && dim_b_bar(t, n) >= dim_b_bar(t, n - 1);
            rep.claim("monotone", "dim B-bar_n is non-decreasing", mono);
        } else if (r_bound->parsed()) {
            const auto c = RdpCollection::parse(collection);
            const auto z = z_infty_upper_bound(c);
            rep.inputs() = {{"collection", c.str()}, {"max_n", max_n}};
            Json h0 = Json::array();
            for (int n = 0; n <= max_n; ++n) h0.push_back(h0_bn_dim(c, n));
            rep.results() = {{"i", c.i()}, {"m", c.m()}, {"b", c.b()}, {"n_B", c.n_b()}, {"f_m", f_bound(c.m())},
                             {"bound", z.bound}, {"sharpness_caveat", z.sharpness_caveat}, {"h0_bn_dim", h0}};
            rep.claim("at-most-5", "f(m) + b - n_B <= 5", z.bound <= 5);
        } else if (ver->parsed()) {
            VerifyOptions o;
            o.seed = seed;
            o.jobs = jobs;
            o.quick = g.quick;
            o.progress = progress;
            if (which == "all") {
                rep = verify_all(o, command);
            } else {
                rep.inputs() = {{"quick", o.quick}, {"criterion", which}};
                rep.results()["criteria"] = Json::array();
                if (which == "determinism") {
                    add_to_report(rep, run_criterion(13, which, verify_determinism, o));
                } else {
                    int n = 0;
                    for (const auto& [name, fn] : criteria()) {
                        ++n;
                        if (name == which) add_to_report(rep, run_criterion(n, name, fn, o));
                    }
                }
            }
        }
        emit(rep, g.out, out);
        return rep.verified() ? kOk : kClaimFailed;
    } catch (const std::invalid_argument& e) {
        err << "kummerlab: " << e.what() << "\n";
        return kUsage;
    } catch (const std::out_of_range& e) {
        err << "kummerlab: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "kummerlab: " << e.what() << "\n";
        return kClaimFailed;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args);
}

}  // namespace kummerlab::cli
