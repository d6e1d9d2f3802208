// normlift: subgroup lattices, transfer systems and the lifting problem.

#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normlift/error.hpp"
#include "normlift/io.hpp"
#include "normlift/lattice.hpp"
#include "normlift/lifting.hpp"
#include "normlift/lossless.hpp"
#include "normlift/mcf.hpp"
#include "normlift/parallel.hpp"
#include "normlift/poset.hpp"
#include "normlift/sl2split.hpp"
#include "normlift/transfer.hpp"

using namespace normlift;

namespace {

SubgroupLattice lattice_of(const std::string& spec) {
    const Limits limits = default_limits();
    return enumerate_subgroups(build_group(GroupSpec::parse(spec), limits), limits);
}

std::string flags(const SubgroupLattice& l, std::size_t i) {
    std::string s;
    if (l.is_cyclic(i)) s += " cyclic";
    if (l.is_normal(i)) s += " normal";
    return s;
}

int cmd_lattice(const std::string& spec, bool dot, bool json) {
    const auto l = lattice_of(spec);
    if (json) {
        std::cout << lattice_to_json(l);
    } else if (dot) {
        std::cout << lattice_to_dot(l);
    } else {
        std::cout << "group " << l.group().spec().to_string() << ", order " << l.group().order() << ", "
                  << l.size() << " subgroups, " << l.class_count() << " classes\n";
        for (std::size_t i = 0; i < l.size(); ++i)
            std::cout << std::setw(5) << i << "  order " << std::setw(5) << l.order_of(i) << "  class "
                      << std::setw(4) << l.class_of(i) << "  normalizer " << std::setw(5) << l.normalizer_of(i)
                      << flags(l, i) << "\n";
    }
    return 0;
}

int cmd_classes(const std::string& spec, bool dot, bool json) {
    const auto l = lattice_of(spec);
    const auto cp = quotient_poset(l);
    if (json) {
        std::cout << classes_to_json(l, cp);
    } else if (dot) {
        std::cout << poset_to_dot(cp.poset);
    } else {
        std::cout << cp.classes.size() << " classes\n";
        for (std::size_t c = 0; c < cp.classes.size(); ++c)
            std::cout << std::setw(4) << c << "  rep " << std::setw(5) << cp.classes[c].rep << "  order "
                      << std::setw(5) << cp.classes[c].order << "  size " << std::setw(4) << cp.classes[c].size
                      << flags(l, cp.classes[c].rep) << "\n";
        std::cout << "covers:";
        for (auto [a, b] : cp.poset.hasse_edges()) std::cout << " " << a << "<" << b;
        std::cout << "\n";
    }
    return 0;
}

int cmd_count_ts(const std::string& poset_file, const std::string& group, bool categorical, bool equivariant,
                 const std::string& strategy_name, bool list) {
    if (poset_file.empty() == group.empty()) throw CLI::ValidationError("count-ts", "give exactly one of --poset, --group");
    if (categorical && equivariant) throw CLI::ValidationError("count-ts", "--categorical and --equivariant exclude each other");
    const auto strategy =
        strategy_name == "subset" ? EnumerationStrategy::subset_closure : EnumerationStrategy::next_closure;
    std::vector<Relation> systems;
    Carrier carrier = Carrier::poset;
    if (!poset_file.empty()) {
        if (equivariant) throw CLI::ValidationError("count-ts", "--equivariant needs --group");
        systems = enumerate_cat_transfer_systems(load_poset(poset_file), strategy);
    } else {
        const auto l = lattice_of(group);
        if (categorical) {
            systems = enumerate_cat_transfer_systems(quotient_poset(l).poset, strategy);
        } else {
            systems = enumerate_g_transfer_systems(l, strategy);
            carrier = Carrier::subgroups;
        }
    }
    std::cout << systems.size() << "\n";
    if (list)
        for (const auto& r : systems) std::cout << relation_to_json(r, carrier, group);
    return 0;
}

int cmd_check_lossless(const std::string& spec) {
    const Limits limits = default_limits();
    const auto l = lattice_of(spec);
    const auto v = is_lossless(l);
    std::optional<bool> ul;
    try {
        ul = is_universally_lossless(l, limits);
    } catch (const TooLarge&) {
        ul.reset();
    }
    std::cout << lossless_to_json(l, v, ul, lossless_criteria(l));
    return v.lossless ? 0 : 1;
}

int cmd_lift_report(const std::string& spec, bool json) {
    const auto l = lattice_of(spec);
    const auto cp = quotient_poset(l);
    const auto rep = lift_report(l, cp);
    if (json) {
        std::cout << lift_report_to_json(rep, l.group().spec().to_string());
    } else {
        std::cout << "poset_size, total, liftable\n"
                  << rep.poset_size << ", " << rep.total << ", " << rep.liftable << "\n";
    }
    return 0;
}

int cmd_mcf(const std::string& spec) {
    const auto l = lattice_of(spec);
    const auto st = mcf_structure(l);
    if (!st) throw NotMcf(spec + " is not a Frobenius group with cyclic kernel and complement");
    const auto cp = quotient_poset(l);
    const auto grid = grid_iso(l, cp, *st);
    std::cout << "kernel " << st->kernel << " (order " << st->n << "), complement " << st->complement << " (order "
              << st->t << ")\n";
    for (std::size_t c = 0; c < cp.classes.size(); ++c)
        std::cout << "class " << std::setw(3) << c << "  order " << std::setw(4) << cp.classes[c].order << "  -> ("
                  << grid.coords[c].first << ", " << grid.coords[c].second << ")\n";
    return 0;
}

int cmd_mcf_lift(const std::string& spec, const std::string& input) {
    const auto l = lattice_of(spec);
    const auto st = mcf_structure(l);
    if (!st) throw NotMcf(spec + " is not a Frobenius group with cyclic kernel and complement");
    const auto cp = quotient_poset(l);
    const auto parsed = relation_from_json(read_file(input));
    if (parsed.carrier != Carrier::poset) throw CarrierMismatch("mcf-lift expects a relation on Sub(G)/G");
    if (!is_cat_transfer_system(cp.poset, parsed.relation))
        throw InvalidArrow("input is not a transfer system on Sub(G)/G");
    const auto v = mcf_violation(l, cp, *st, parsed.relation);
    if (!v) {
        std::cout << "liftable\n";
        return 0;
    }
    std::cout << "not liftable: [" << v->arrow.first << "] -> [" << v->arrow.second << "] requires ["
              << v->missing.first << "] -> [" << v->missing.second << "]\n";
    return 0;
}

int cmd_closure(const std::string& spec, const std::string& arrows_file, bool dot) {
    const auto l = lattice_of(spec);
    const auto seed = load_arrows(arrows_file);
    const auto r = g_closure(l, seed);
    if (dot) std::cout << lattice_to_dot(l, &r);
    else std::cout << relation_to_json(r, Carrier::subgroups, l.group().spec().to_string());
    return 0;
}

struct Row {
    std::string name;
    std::string expected;
    std::string actual;
};

int cmd_reproduce_paper() {
    std::vector<std::function<Row()>> rows;
    const auto count_pair = [](const std::string& name, const std::string& spec, std::size_t total,
                               std::size_t liftable) {
        return [=] {
            const auto l = lattice_of(spec);
            const auto rep = lift_report(l, quotient_poset(l));
            return Row{name + " cat/liftable", std::to_string(total) + "/" + std::to_string(liftable),
                       std::to_string(rep.total) + "/" + std::to_string(rep.liftable)};
        };
    };
    const auto direct = [](const std::string& name, const std::string& spec, std::size_t n) {
        return [=] {
            return Row{name + " direct G-enumeration", std::to_string(n),
                       std::to_string(enumerate_g_transfer_systems(lattice_of(spec)).size())};
        };
    };
    const auto lossless = [](const std::string& name, const std::string& spec, bool expected) {
        return [=] {
            const auto v = is_lossless(lattice_of(spec));
            return Row{name + " lossless", expected ? "true" : "false", v.lossless ? "true" : "false"};
        };
    };
    rows.push_back([] {
        return Row{"[1]x[1] cat", "10",
                   std::to_string(enumerate_cat_transfer_systems(product(chain(1), chain(1))).size())};
    });
    rows.push_back(count_pair("S3", "S3", 10, 9));
    rows.push_back(count_pair("D9", "D9", 68, 56));
    rows.push_back(count_pair("AGL1(5)", "AGL1(5)", 68, 59));
    rows.push_back(count_pair("AGL1(7)", "AGL1(7)", 450, 400));
    rows.push_back(direct("S3", "S3", 9));
    rows.push_back(direct("D9", "D9", 56));
    rows.push_back(direct("AGL1(5)", "AGL1(5)", 59));
    rows.push_back(direct("AGL1(7)", "AGL1(7)", 400));
    for (const char* s : {"C12", "prod(C2,C2)", "prod(C2,prod(C2,C2))", "prod(C3,C3)", "D9", "Dic7", "Q8", "SD4",
                          "MM4", "SL2(2)", "SL2(3)", "SL2(5)"})
        rows.push_back(lossless(s, s, true));
    rows.push_back(lossless("C2xA4", "prod(C2,A4)", false));
    rows.push_back(lossless("order-81 vsd", "vsd(3,3,3,[[1,1,1],[0,1,1],[0,0,1]])", false));
    rows.push_back(lossless("SL2(7)", "SL2(7)", false));

    bool all = true;
    std::cout << std::left << std::setw(34) << "row" << std::setw(12) << "expected" << std::setw(12) << "actual"
              << "status\n";
    for (const auto& make : rows) {
        const Row r = make();
        const bool ok = r.expected == r.actual;
        all = all && ok;
        std::cout << std::setw(34) << r.name << std::setw(12) << r.expected << std::setw(12) << r.actual
                  << (ok ? "OK" : "FAIL") << "\n";
    }
    return all ? 0 : 1;
}

int cmd_sl2(unsigned p, std::size_t samples, std::uint64_t seed, bool pairs, bool json) {
    const auto frame = build_frame(p);
    const auto rep = conjecture_check(frame, samples, seed, pairs);
    if (json) {
        std::cout << conjecture_to_json(rep);
        return 0;
    }
    std::cout << "p " << p << ", eps " << frame.eps << ", |H_eps| " << frame.lattice->order_of(frame.h_eps)
              << ", D_G " << frame.d_poset.size() << ", U_G " << frame.u_poset.size() << ", I_G "
              << frame.i_poset.size() << "\n";
    for (const auto& c : frame.checks) std::cout << (c.ok ? "  ok    " : "  FAIL  ") << c.name << "\n";
    std::cout << "orbits " << rep.orbit_count << ", samples " << rep.samples.size() << ", passed " << rep.passed
              << ", failed " << rep.failed << "\n";
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        const auto& s = rep.samples[i];
        if (s.pass()) continue;
        std::cout << "counterexample sample " << i << " (" << s.kind << "), seed arrows:";
        for (auto [a, b] : s.seed) std::cout << " " << a << "->" << b;
        if (!s.valid) std::cout << "; invalid triple: " << s.failure;
        if (s.disagreement) std::cout << "; first disagreement " << s.disagreement->first << "->" << s.disagreement->second;
        std::cout << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subgroup lattices, transfer systems and their lifts"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "Worker threads (0: hardware concurrency)");

    std::string spec, poset_file, group, arrows, input, strategy = "next-closure";
    bool dot = false, json = false, categorical = false, equivariant = false, list = false, pairs = false;
    unsigned p = 13;
    std::size_t samples = 200;
    std::uint64_t seed = 1;

    auto* lattice = app.add_subcommand("lattice", "List the subgroups of a group");
    lattice->add_option("spec", spec, "Group spec")->required();
    lattice->add_flag("--dot", dot, "Graphviz output");
    lattice->add_flag("--json", json, "JSON output");

    auto* classes = app.add_subcommand("classes", "Conjugacy classes of subgroups");
    classes->add_option("spec", spec, "Group spec")->required();
    classes->add_flag("--dot", dot, "Graphviz output");
    classes->add_flag("--json", json, "JSON output");

    auto* count = app.add_subcommand("count-ts", "Count transfer systems");
    count->add_option("--poset", poset_file, "Poset JSON file");
    count->add_option("--group", group, "Group spec");
    count->add_flag("--categorical", categorical, "Categorical systems (on Sub(G)/G for a group)");
    count->add_flag("--equivariant", equivariant, "G-transfer systems on Sub(G)");
    count->add_option("--strategy", strategy, "next-closure or subset")
        ->check(CLI::IsMember({"next-closure", "subset"}));
    count->add_flag("--list", list, "Print every system as JSON");

    auto* check = app.add_subcommand("check-lossless", "Decide losslessness; exit 1 when lossy");
    check->add_option("spec", spec, "Group spec")->required();

    auto* lift = app.add_subcommand("lift-report", "Liftable categorical transfer systems on Sub(G)/G");
    lift->add_option("spec", spec, "Group spec")->required();
    lift->add_flag("--json", json, "JSON output");

    auto* mcf = app.add_subcommand("mcf", "Frobenius structure and divisor grid labels");
    mcf->add_option("spec", spec, "Group spec")->required();

    auto* mcf_lift = app.add_subcommand("mcf-lift", "Liftability of a system on Sub(G)/G via the base criterion");
    mcf_lift->add_option("spec", spec, "Group spec")->required();
    mcf_lift->add_option("--input", input, "Transfer-system JSON on Sub(G)/G")->required();

    auto* closure = app.add_subcommand("closure", "Least G-transfer system containing the given arrows");
    closure->add_option("spec", spec, "Group spec")->required();
    closure->add_option("--arrows", arrows, "JSON file of subgroup-index pairs")->required();
    closure->add_flag("--dot", dot, "Graphviz output");

    auto* reproduce = app.add_subcommand("reproduce-paper", "Verify the published counts and verdicts");

    auto* sl2 = app.add_subcommand("sl2-conjecture", "Search for split-transfer-system counterexamples in SL2(p)");
    sl2->add_option("--p", p, "Prime with p = 3 or 5 mod 8");
    sl2->add_option("--samples", samples, "Random orbit-subset samples");
    sl2->add_option("--seed", seed, "mt19937_64 seed");
    sl2->add_flag("--exhaustive-singles", pairs, "Also run every two-orbit seed");
    sl2->add_flag("--json", json, "JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (dot && json) {
        std::cerr << "error: --dot and --json exclude each other\n";
        return 2;
    }
    set_thread_count(threads);

    try {
        if (*lattice) return cmd_lattice(spec, dot, json);
        if (*classes) return cmd_classes(spec, dot, json);
        if (*count) return cmd_count_ts(poset_file, group, categorical, equivariant, strategy, list);
        if (*check) return cmd_check_lossless(spec);
        if (*lift) return cmd_lift_report(spec, json);
        if (*mcf) return cmd_mcf(spec);
        if (*mcf_lift) return cmd_mcf_lift(spec, input);
        if (*closure) return cmd_closure(spec, arrows, dot);
        if (*reproduce) return cmd_reproduce_paper();
        if (*sl2) return cmd_sl2(p, samples, seed, pairs, json);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
