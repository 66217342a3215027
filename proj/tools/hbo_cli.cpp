#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "acceptance.hpp"
#include "hbo/export.hpp"
#include "hbo/lax.hpp"
#include "hbo/realization.hpp"

using namespace hbo;
using nlohmann::json;

namespace {

enum Exit { ok = 0, counterexample = 1, usage = 2, cap = 3 };

struct Globals {
    std::string format = "text";
    uint64_t max_nodes = default_max_nodes;
    uint64_t max_evals = default_max_evals;
    uint64_t seed = 1;
    unsigned threads = 1;
};

std::string colored_order(const InvSet& inv)
{
    std::string s;
    for (Label J : witness(inv).entries)
        s += (s.empty() ? "" : " ") + to_string(J) + color_char(color_of(J, inv));
    return s;
}

Color order_color(const std::string& order)
{
    if (order == "tamari")
        return Color::Blue;
    if (order == "dual")
        return Color::Red;
    if (order == "mixed")
        return Color::Green;
    throw DomainError("unknown order: " + order);
}

json load_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open " + path);
    return json::parse(in);
}

EquationPair make_equation(const std::string& family, int N, bool hatted)
{
    auto e = generate_equation(N, parse_family(family == "dual" ? "dual_polygon" : family));
    return hatted ? collapse_hatted(e) : e;
}

void print_bruhat(const PosetGraph& P, const Globals& g, bool stats)
{
    if (stats) {
        uint64_t orders = for_each_A(P.N, P.n, [](const std::vector<Label>&) {}, g.max_nodes);
        if (g.format == "json")
            std::cout << json{{"classes", P.nodes.size()}, {"admissible_orders", orders}, {"edges", P.edges.size()}}
                      << "\n";
        else
            std::cout << "classes: " << P.nodes.size() << ", admissible orders: " << orders << "\n";
        return;
    }
    if (g.format == "json") {
        std::cout << to_json(P).dump(2) << "\n";
    } else if (g.format == "dot") {
        std::cout << to_dot(P);
    } else {
        for (size_t i = 0; i < P.nodes.size(); ++i)
            std::cout << i << ": inv " << to_string(P.nodes[i].members()) << "  witness "
                      << to_string(witness(P.nodes[i]).entries) << "\n";
        for (const auto& e : P.edges)
            std::cout << e.src << " -" << to_string(e.label) << "-> " << e.dst << "\n";
    }
}

void print_tamari(const TamariPoset& T, const Globals& g, bool stats)
{
    if (stats) {
        if (g.format == "json")
            std::cout << json{{"classes", T.nodes.size()}, {"edges", T.edges.size()}} << "\n";
        else
            std::cout << "classes: " << T.nodes.size() << ", edges: " << T.edges.size() << "\n";
        return;
    }
    if (g.format == "json") {
        std::cout << to_json(T).dump(2) << "\n";
    } else if (g.format == "dot") {
        std::cout << to_dot(T);
    } else {
        for (size_t i = 0; i < T.nodes.size(); ++i)
            std::cout << i << ": " << to_string(T.nodes[i]) << "\n";
        for (const auto& e : T.edges) {
            std::string labels;
            for (Label K : e.labels)
                labels += (labels.empty() ? "" : ",") + to_string(K);
            std::cout << e.src << " -" << labels << " " << kind_name(e.kind) << "-> " << e.dst << "\n";
        }
    }
}

int run_check(const std::string& eq_path, const std::string& real_path, uint64_t sample, const Globals& g)
{
    auto e = equation_from_json(load_json(eq_path));
    auto r = realization_from_json(load_json(real_path));
    VerifyOptions vo{g.max_evals, sample, g.seed, g.threads};
    auto rep = verify(e, r, vo);
    auto tuple = [](const std::vector<uint32_t>& v) {
        std::string s = "(";
        for (size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s + ")";
    };
    if (g.format == "json") {
        json j{{"equation", rep.equation},
               {"holds", rep.holds()},
               {"tuples", rep.total},
               {"exhaustive", rep.exhaustive},
               {"runtime_ms", rep.runtime_ms}};
        if (rep.counterexample)
            j["counterexample"] = {{"input", rep.counterexample->input},
                                   {"lhs", rep.counterexample->lhs},
                                   {"rhs", rep.counterexample->rhs}};
        std::cout << j.dump(2) << "\n";
    } else {
        if (rep.holds())
            std::cout << rep.equation << ": holds on " << rep.total
                      << (rep.exhaustive ? " tuples (exhaustive)" : " sampled tuples") << "\n";
        else
            std::cout << rep.equation << ": fails (counterexample after " << rep.total << " tuples)\n";
        if (rep.counterexample)
            std::cout << "counterexample " << tuple(rep.counterexample->input) << ": lhs "
                      << tuple(rep.counterexample->lhs) << ", rhs " << tuple(rep.counterexample->rhs) << "\n";
    }
    return rep.holds() ? Exit::ok : Exit::counterexample;
}

void print_lax(const LaxDerivation& d, const Globals& g)
{
    if (g.format == "json") {
        std::cout << to_json(d).dump(2) << "\n";
        return;
    }
    for (auto* side : {&d.lex, &d.rev}) {
        std::cout << (side == &d.lex ? "chain C_lex:" : "chain C_rev:") << "\n";
        for (const auto& l : side->lines)
            std::cout << "  " << (l.tag.empty() ? "" : "=[" + l.tag + "] ") << render_lax_word(l.word, d.ground)
                      << "\n";
    }
    std::cout << render_equation(d.equation) << "\n";
}

void print_monoid(int N, MonoidVariant v, const Globals& g)
{
    auto traces = monoid_check(N, v);
    if (g.format == "json") {
        json j = json::array();
        for (auto& t : traces)
            j.push_back(to_json(t));
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (auto& t : traces) {
        std::cout << (t.forward ? "forward" : "backward") << ": " << render_gens(t.start, N) << "\n";
        for (auto& s : t.steps)
            std::cout << "  " << s.rule << " @" << s.position << ": " << render_gens(s.before, N) << " -> "
                      << render_gens(s.after, N) << "\n";
        std::cout << "  = " << render_gens(t.finish, N) << "\n";
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Higher Bruhat and Tamari orders, simplex and polygon equations"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
    app.add_option("--max-nodes", g.max_nodes, "Cap on enumerated nodes");
    app.add_option("--max-evals", g.max_evals, "Cap on map evaluations in check");
    app.add_option("--seed", g.seed, "Seed for sampling and randomized tests");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);

    int N = 0, n = 0, k = 0;
    std::string order = "bruhat", family = "simplex", what, eq_path, real_path, fixtures = HBO_FIXTURE_DIR;
    std::string monoid, kind = "group", group = "z2";
    bool stats = false, hatted = false, lax = false;
    uint64_t sample = 0;
    uint32_t size = 2;
    auto orders = CLI::IsMember({"bruhat", "tamari", "dual", "mixed"});

    auto* en = app.add_subcommand("enumerate", "Enumerate B(N,n) or a colored quotient");
    en->add_option("--order", order)->check(orders);
    en->add_option("-N", N)->required();
    en->add_option("-n", n)->required();
    en->add_flag("--stats", stats);

    auto* de = app.add_subcommand("decompose", "Three-color split of B(N,n)");
    de->add_option("-N", N)->required();
    de->add_option("-n", n)->required();

    auto* dv = app.add_subcommand("derive", "Generate an equation, a Lax derivation or a monoid trace");
    dv->add_option("--family", family)->check(CLI::IsMember({"simplex", "polygon", "dual", "mixed"}));
    dv->add_option("-N", N)->required();
    dv->add_flag("--hatted", hatted);
    dv->add_flag("--lax", lax, "Derive the level N+1 equation from the hatted level N Lax system");
    dv->add_option("--monoid", monoid, "Monoid trace variant")
        ->check(CLI::IsMember({"full", "blue", "red", "mixed"}));

    auto* ch = app.add_subcommand("check", "Verify a finite realization of an equation");
    ch->add_option("--equation", eq_path)->required()->check(CLI::ExistingFile);
    ch->add_option("--realization", real_path)->required()->check(CLI::ExistingFile);
    ch->add_option("--sample", sample, "Random tuples to check when the cap is exceeded");

    auto* pr = app.add_subcommand("project", "Project the classes of an order to ground size N-1");
    pr->add_option("--order", order)->check(orders);
    pr->add_option("-N", N)->required();
    pr->add_option("-n", n)->required();
    pr->add_option("-k", k)->required();

    auto* ex = app.add_subcommand("export", "Write a poset, an equation or a realization");
    ex->add_option("--what", what)->required()->check(CLI::IsMember({"poset", "equation", "realization"}));
    ex->add_option("--order", order)->check(orders);
    ex->add_option("--family", family)->check(CLI::IsMember({"simplex", "polygon", "dual", "mixed"}));
    ex->add_option("-N", N);
    ex->add_option("-n", n);
    ex->add_flag("--hatted", hatted);
    ex->add_option("--kind", kind, "Realization: group, transposition or trivial")
        ->check(CLI::IsMember({"group", "transposition", "trivial"}));
    ex->add_option("--group", group, "z2, z3 or s3")->check(CLI::IsMember({"z2", "z3", "s3"}));
    ex->add_option("--size", size, "Carrier size of the transposition realization");

    auto* st = app.add_subcommand("selftest", "Run the acceptance suite");
    st->add_option("--fixtures", fixtures);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Exit::usage;
    }

    try {
        if (*en) {
            if (order == "bruhat")
                print_bruhat(enumerate_B(N, n, g.max_nodes), g, stats);
            else
                print_tamari(enumerate_T(N, n, order_color(order), g.max_nodes), g, stats);
        } else if (*de) {
            auto P = enumerate_B(N, n, g.max_nodes);
            json j = json::object();
            for (Color c : {Color::Blue, Color::Red, Color::Green}) {
                auto T = quotient(P, c);
                j[color_name(c)] = {{"classes", T.nodes.size()}, {"edges", T.edges.size()}};
            }
            if (g.format == "json") {
                json nodes = json::array();
                for (auto& inv : P.nodes)
                    nodes.push_back({{"inv", to_string(inv.members())}, {"witness", colored_order(inv)}});
                j["nodes"] = nodes;
                std::cout << j.dump(2) << "\n";
            } else {
                for (size_t i = 0; i < P.nodes.size(); ++i)
                    std::cout << i << ": " << colored_order(P.nodes[i]) << "\n";
                for (auto& e : P.edges)
                    std::cout << e.src << " -" << to_string(e.label) << color_char(inversion_color(P.nodes[e.src], e.label))
                              << "-> " << e.dst << "\n";
                for (Color c : {Color::Blue, Color::Red, Color::Green})
                    std::cout << color_name(c) << ": " << j[color_name(c)]["classes"] << " classes, "
                              << j[color_name(c)]["edges"] << " edges\n";
            }
        } else if (*dv) {
            if (!monoid.empty()) {
                print_monoid(N, parse_variant(monoid), g);
            } else if (lax) {
                if (family != "simplex" && family != "polygon")
                    throw DomainError("--lax needs --family simplex or polygon");
                print_lax(derive_consistency(N, parse_family(family)), g);
            } else {
                auto e = make_equation(family, N, hatted);
                if (g.format == "json")
                    std::cout << to_json(e).dump(2) << "\n";
                else
                    std::cout << render_equation(e) << "\n";
            }
        } else if (*ch) {
            return run_check(eq_path, real_path, sample, g);
        } else if (*pr) {
            if (order == "bruhat") {
                auto P = enumerate_B(N, n, g.max_nodes);
                for (size_t i = 0; i < P.nodes.size(); ++i)
                    std::cout << to_string(P.nodes[i].members()) << " -> "
                              << to_string(project_class(BruhatClass{P.nodes[i]}, k).inv.members()) << "\n";
            } else {
                Color c = order_color(order);
                Color pc = projected_color(c, N, k);
                auto T = enumerate_T(N, n, c, g.max_nodes);
                std::cout << "projection to the " << color_name(pc) << " order of ground size "
                          << N - 1 << "\n";
                for (auto& node : T.nodes)
                    std::cout << to_string(node) << " -> " << to_string(project_tamari(node, N, k)) << "\n";
            }
        } else if (*ex) {
            if (what == "poset") {
                bool json_out = g.format != "dot";
                if (order == "bruhat") {
                    auto P = enumerate_B(N, n, g.max_nodes);
                    std::cout << (json_out ? to_json(P).dump(2) + "\n" : to_dot(P));
                } else {
                    auto T = enumerate_T(N, n, order_color(order), g.max_nodes);
                    std::cout << (json_out ? to_json(T).dump(2) + "\n" : to_dot(T));
                }
            } else {
                auto e = make_equation(family, N, hatted);
                if (what == "equation") {
                    std::cout << to_json(e).dump(2) << "\n";
                } else if (kind == "group") {
                    auto G = group == "s3" ? symmetric_group3() : cyclic_group(group == "z3" ? 3 : 2);
                    std::cout << to_json(group_realization(e, G)).dump() << "\n";
                } else if (kind == "transposition") {
                    std::cout << to_json(transposition_realization(e, size)).dump() << "\n";
                } else {
                    std::cout << to_json(trivial_realization(e)).dump() << "\n";
                }
            }
        } else if (*st) {
            acceptance::Options opt{fixtures, g.threads, g.seed};
            auto results = acceptance::run_all(opt);
            return acceptance::report(results, std::cout) == 0 ? Exit::ok : Exit::counterexample;
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return Exit::cap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Exit::usage;
    }
    return Exit::ok;
}
