#pragma once

// Command-line front end. Needs CLI11.hpp and json.hpp on the include path.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "forms.hpp"
#include "io.hpp"
#include "monodromy.hpp"
#include "perm.hpp"
#include "resultant.hpp"
#include "roots.hpp"
#include "transform.hpp"

namespace resolvent::cli {

using io::json;

// Unreadable or unwritable files. Exit status 1.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

struct Config {
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::size_t max_order = 1'000'000;
    std::string out_path;

    std::string in_path;
    std::string map_path;
    std::string family_path;
    int general = 0;
    std::string point_path;
    std::string basepoint_path;
    std::string group_path;
    std::string roots_path;
    std::string partition;
    std::string trace_path;
    int trace_loop = 0;
    std::string p = "0", q = "0", gamma = "0";
    int n = 0;
    bool even_only = false;
    bool check_vanish = false;
    bool show_expansion = false;
    bool symbolic = false;
    std::size_t expand_limit = kDefaultExpandLimit;
    int samples = 20;
    double radius = 1e-3;
    double min_step = TrackOptions{}.min_step;
};

inline ParamFamily load_family(const Config& c) {
    if (c.general > 0) return ParamFamily::general(c.general);
    if (c.family_path.empty()) throw ParseError("a family is required: --family FILE or --general N");
    return io::family_from(read_json(c.family_path));
}

inline TrackOptions track_options(const Config& c) {
    TrackOptions o;
    o.min_step = c.min_step;
    return o;
}

inline json cmd_disc(const Config& c) {
    auto f = io::poly_from(read_json(c.in_path));
    if (const auto* r = std::get_if<RationalPoly>(&f)) return {{"discriminant", format_rational(discriminant(*r))}};
    return {{"discriminant", io::to_json(discriminant(std::get<ComplexPoly>(f)))}};
}

inline json cmd_roots(const Config& c) {
    auto f = io::poly_from(read_json(c.in_path));
    return std::visit([&](const auto& p) { return io::to_json(find_roots(p, c.tol)); }, f);
}

inline json cmd_tschirnhaus(const Config& c) {
    auto f = io::poly_from(read_json(c.in_path));
    auto phi = io::poly_from(read_json(c.map_path));
    const auto* fr = std::get_if<RationalPoly>(&f);
    const auto* pr = std::get_if<RationalPoly>(&phi);
    if (fr && pr) return io::to_json(tschirnhaus(*fr, TschirnhausMap<Rational>(*pr)));
    return io::to_json(tschirnhaus(io::complex_poly(f), TschirnhausMap<Complex>(io::complex_poly(phi))));
}

inline json cmd_bring_jerrard(const Config& c) {
    auto f = io::poly_from(read_json(c.in_path));
    auto r = std::visit([&](const auto& p) { return bring_jerrard(p, c.tol); }, f);
    return {{"p", io::to_json(r.p)},
            {"q", io::to_json(r.q)},
            {"phi", io::to_json(r.map.phi)},
            {"residuals", r.residuals}};
}

inline json cmd_normalize(const Config& c) {
    auto r = one_param_normalize(parse_complex(c.p), parse_complex(c.q));
    return {{"c", io::to_json(r.c)}, {"scale", io::to_json(r.scale)}};
}

inline json cmd_klein(const Config& c) { return io::to_json(klein_family(parse_complex(c.gamma))); }

inline json cmd_chain_bound(const Config& c) {
    auto r = max_chain(c.n, c.even_only);
    json w = json::array();
    for (const auto& p : r.witness) w.push_back(p.to_string());
    return {{"n", c.n}, {"even_only", c.even_only}, {"bound", r.length}, {"witness", w}};
}

inline json cmd_monodromy(const Config& c) {
    auto fam = load_family(c);
    Point base = c.basepoint_path.empty() ? random_basepoint(fam, c.seed) : io::point_from(read_json(c.basepoint_path));
    if (static_cast<int>(base.size()) != fam.m) throw DomainError("basepoint must have length m");
    const auto opts = track_options(c);
    auto r = monodromy_report(fam, base, opts, c.seed, c.max_order);
    if (!c.trace_path.empty()) {
        std::vector<TraceRow> trace;
        if (!r.loops.empty()) {
            if (c.trace_loop < 0 || c.trace_loop >= static_cast<int>(r.loops.size()))
                throw DomainError("trace loop index out of range");
            track_loop(fam, r.loops[static_cast<std::size_t>(c.trace_loop)], opts, &trace);
        }
        std::ofstream out(c.trace_path);
        if (!out) throw IoError("cannot write " + c.trace_path);
        emit_plot_data(trace, fam.m, fam.n, out);
    }
    json loops = json::array();
    for (const auto& l : r.loops) loops.push_back(io::to_json(l));
    return {{"seed", c.seed},
            {"basepoint", io::to_json(r.basepoint)},
            {"roots", io::to_json(r.roots)},
            {"critical_values", io::to_json(r.critical)},
            {"loops", loops},
            {"permutations", io::to_json(r.permutations)},
            {"group", io::group_json(fam.n, r.permutations)},
            {"order", r.group.order()},
            {"transitive", is_transitive(r.group)}};
}

inline json cmd_inertia(const Config& c) {
    auto fam = load_family(c);
    if (c.point_path.empty()) throw ParseError("--point is required");
    auto pt = io::point_from(read_json(c.point_path));
    auto r = inertia_report(fam, pt, c.radius, track_options(c), c.seed);
    return {{"seed", c.seed},
            {"point", io::to_json(pt)},
            {"radius", c.radius},
            {"basepoint", io::to_json(r.basepoint)},
            {"roots", io::to_json(r.roots)},
            {"critical_values", io::to_json(r.critical)},
            {"permutations", io::to_json(r.permutations)},
            {"group", io::group_json(fam.n, r.permutations)},
            {"order", r.group.order()}};
}

inline json cmd_phi(const Config& c, bool tol_given) {
    if (c.group_path.empty()) throw ParseError("--group is required");
    auto group = io::group_from(read_json(c.group_path), c.max_order);
    const double tol = tol_given ? c.tol : 1e-8;
    json out = {{"n", group.n}, {"order", group.order()}};
    if (c.symbolic) {
        auto phi = symbolic_phi(group, c.expand_limit);
        out["symbolic"] = io::sparse_json(*phi.symbolic);
        if (!c.partition.empty()) {
            auto r = restrict_phi(phi, SetPartition::parse(c.partition, group.n), tol, c.samples, c.seed);
            out["restriction"] = {{"partition", r.partition.to_string()},
                                  {"all_coefficients_vanish", r.all_coefficients_vanish},
                                  {"exact", r.exact}};
        }
        return out;
    }
    if (c.roots_path.empty()) throw ParseError("--roots is required unless --symbolic");
    auto roots = io::roots_from(read_json(c.roots_path));
    auto phi = build_phi(group, roots, c.expand_limit);
    out["expanded"] = phi.expanded.has_value();
    if (c.show_expansion && phi.expanded) out["expansion"] = io::sparse_json(*phi.expanded);
    if (!c.partition.empty()) {
        auto part = SetPartition::parse(c.partition, group.n);
        auto r = restrict_phi(phi, part, tol, c.samples, c.seed);
        json res = {{"partition", part.to_string()},
                    {"all_coefficients_vanish", r.all_coefficients_vanish},
                    {"exact", r.exact}};
        if (c.check_vanish) {
            auto v = phi_vanishes_on(phi, part, c.samples, tol, c.seed);
            res["vanishes"] = v.vanishes;
            res["degenerate"] = v.degenerate;
        }
        out["restriction"] = res;
    } else if (c.check_vanish) {
        throw ParseError("--check-vanish needs --partition");
    }
    return out;
}

inline json cmd_bound(const Config& c) {
    auto fam = load_family(c);
    std::optional<PermGroup> group;
    if (!c.group_path.empty()) group = io::group_from(read_json(c.group_path), c.max_order);
    auto r = parameter_lower_bound(fam, group ? &*group : nullptr, c.even_only);
    json chain = json::array();
    for (const auto& s : r.chain) {
        auto j = io::to_json(s.stratum);
        j["chain_codim"] = s.chain_codim;
        j["real_dim"] = s.real_dim;
        chain.push_back(j);
    }
    return {{"n", fam.n},
            {"m", fam.m},
            {"even_only", c.even_only},
            {"q1", r.q1},
            {"chain", chain},
            {"chain_length_unconstrained", r.chain_length_unconstrained}};
}

// The formula row is recomputed three ways and must agree.
inline json cmd_table(const Config&) {
    json ns = json::array(), formula = json::array();
    for (int n = 5; n <= 9; ++n) {
        const int chain = max_chain(n, true).length;
        const int q1 = parameter_lower_bound(ParamFamily::general(n), nullptr, true).q1;
        if (chain != chebotarev_bound(n) || q1 != chain)
            throw DomainError("chain bound disagreement at n = " + std::to_string(n));
        ns.push_back(n);
        formula.push_back(chain);
    }
    json hilbert = json::array({1, 2, 3, 4, 4});
    return {{"n", ns},
            {"rows",
             json::array({{{"name", "formula"}, {"values", formula}, {"source", "computed"}},
                          {{"name", "Hilbert"}, {"values", hilbert}, {"source", "Hilbert (cited literature data)"}}})}};
}

// Runs one command; returns the process exit status.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Resolvent toolkit: polynomial transformations, monodromy, invariant forms and parameter bounds",
                 "resolvent"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Config c;
    app.add_option("--tol", c.tol, "numerical tolerance")->check(CLI::PositiveNumber);
    app.add_option("--seed", c.seed, "random seed");
    app.add_option("--max-order", c.max_order, "largest group to enumerate")->check(CLI::PositiveNumber);
    app.add_option("--out", c.out_path, "write JSON here instead of standard output");

    auto* disc = app.add_subcommand("disc", "discriminant of a polynomial");
    disc->add_option("--in", c.in_path, "polynomial JSON")->required();
    auto* roots = app.add_subcommand("roots", "roots with multiplicities");
    roots->add_option("--in", c.in_path, "polynomial JSON")->required();
    auto* tsch = app.add_subcommand("tschirnhaus", "image polynomial of roots under a polynomial map");
    tsch->add_option("--in", c.in_path, "monic polynomial JSON")->required();
    tsch->add_option("--map", c.map_path, "map polynomial JSON")->required();
    auto* bj = app.add_subcommand("bring-jerrard", "reduce a monic quintic to y^5 + p y + q");
    bj->add_option("--in", c.in_path, "monic quintic JSON")->required();
    auto* norm = app.add_subcommand("normalize", "y^5 + p y + q to z^5 + c z + 1");
    norm->add_option("--p", c.p, "complex literal")->required();
    norm->add_option("--q", c.q, "complex literal")->required();
    auto* klein = app.add_subcommand("klein", "the one-parameter Klein quintic at gamma");
    klein->add_option("--gamma", c.gamma, "complex literal")->required();
    auto* cb = app.add_subcommand("chain-bound", "longest height chain of coincidence patterns");
    cb->add_option("--n", c.n, "degree")->required();
    cb->add_flag("--even-only", c.even_only, "even permutations only");

    auto family_opts = [&](CLI::App* s) {
        auto* f = s->add_option("--family", c.family_path, "family JSON");
        auto* g = s->add_option("--general", c.general, "use the general degree-N family");
        f->excludes(g);
        s->add_option("--min-step", c.min_step, "smallest tracking step")->check(CLI::PositiveNumber);
    };
    auto* mono = app.add_subcommand("monodromy", "monodromy group from lassos on a random line");
    family_opts(mono);
    mono->add_option("--basepoint", c.basepoint_path, "basepoint JSON");
    mono->add_option("--trace", c.trace_path, "write a CSV trace of one lasso here");
    mono->add_option("--trace-loop", c.trace_loop, "index of the traced lasso");
    auto* inertia = app.add_subcommand("inertia", "inertia group at a parameter point");
    family_opts(inertia);
    inertia->add_option("--point", c.point_path, "parameter point JSON")->required();
    inertia->add_option("--radius", c.radius, "neighbourhood radius")->check(CLI::PositiveNumber);
    auto* phi = app.add_subcommand("phi", "invariant form of a group and its coincidence restrictions");
    phi->add_option("--group", c.group_path, "group JSON")->required();
    phi->add_option("--roots", c.roots_path, "roots JSON");
    phi->add_option("--partition", c.partition, "set partition such as {1,2}{3}");
    phi->add_flag("--check-vanish", c.check_vanish, "sampled vanishing test on the partition");
    phi->add_flag("--show-expansion", c.show_expansion, "include the expanded polynomial in t");
    phi->add_flag("--symbolic", c.symbolic, "expand over the integers in t and x");
    phi->add_option("--expand-limit", c.expand_limit, "largest group order to expand");
    phi->add_option("--samples", c.samples, "sample count for vanishing tests")->check(CLI::PositiveNumber);
    auto* bound = app.add_subcommand("bound", "parameter lower bound from realized chains");
    family_opts(bound);
    bound->add_option("--group", c.group_path, "group JSON (default: symmetric group)");
    bound->add_flag("--even-only", c.even_only, "even permutations only");
    app.add_subcommand("table", "chain bound against the cited Hilbert row for n = 5..9");

    // global options all take one value
    for (std::size_t k = 0; k < args.size(); ++k) {
        const auto& a = args[k];
        if (a == "--tol" || a == "--seed" || a == "--max-order" || a == "--out") {
            ++k;
            continue;
        }
        if (a.empty() || a[0] == '-') continue;
        if (!app.get_subcommand_no_throw(a)) {
            err << "error: unknown subcommand \"" << a << "\"\n" << app.help();
            return 1;
        }
        break;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 1;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    const bool tol_given = app.count("--tol") > 0;
    try {
        json result;
        if (name == "disc") result = cmd_disc(c);
        else if (name == "roots") result = cmd_roots(c);
        else if (name == "tschirnhaus") result = cmd_tschirnhaus(c);
        else if (name == "bring-jerrard") result = cmd_bring_jerrard(c);
        else if (name == "normalize") result = cmd_normalize(c);
        else if (name == "klein") result = cmd_klein(c);
        else if (name == "chain-bound") result = cmd_chain_bound(c);
        else if (name == "monodromy") result = cmd_monodromy(c);
        else if (name == "inertia") result = cmd_inertia(c);
        else if (name == "phi") result = cmd_phi(c, tol_given);
        else if (name == "bound") result = cmd_bound(c);
        else result = cmd_table(c);
        const std::string text = result.dump() + "\n";
        if (c.out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(c.out_path);
            if (!f) throw IoError("cannot write " + c.out_path);
            f << text;
        }
        return 0;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace resolvent::cli
