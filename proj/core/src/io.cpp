#include "normlift/io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "normlift/error.hpp"

namespace normlift {

using nlohmann::json;

namespace {

json arrow_list(const std::vector<Arrow>& arrows) {
    json out = json::array();
    for (auto [a, b] : arrows) out.push_back({a, b});
    return out;
}

json parse(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad ") + what + " JSON: " + e.what());
    }
}

template <typename F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad ") + what + " JSON: " + e.what());
    }
}

std::vector<Arrow> arrows_of(const json& j) {
    std::vector<Arrow> out;
    for (const auto& a : j) {
        if (!a.is_array() || a.size() != 2) throw ParseError("arrow must be a pair [i, j]");
        out.emplace_back(a[0].get<std::size_t>(), a[1].get<std::size_t>());
    }
    return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

const char* const palette[] = {"#fde0dd", "#e0ecf4", "#e5f5e0", "#fff7bc", "#efedf5", "#fee6ce",
                               "#deebf7", "#f0f0f0", "#fcc5c0", "#c7e9c0", "#d4b9da", "#fdd0a2"};

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

void red_arrows(std::ostringstream& os, const Relation* r) {
    if (!r) return;
    for (auto [a, b] : r->arrows())
        os << "  n" << a << " -> n" << b << " [color=red, constraint=false];\n";
}

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string lattice_to_json(const SubgroupLattice& l) {
    const Group& g = l.group();
    json subs = json::array();
    for (std::size_t i = 0; i < l.size(); ++i)
        subs.push_back({{"index", i},
                        {"order", l.order_of(i)},
                        {"elements", l.subgroup(i).to_indices()},
                        {"class", l.class_of(i)},
                        {"normalizer", l.normalizer_of(i)}});
    std::vector<Arrow> leq;
    for (std::size_t j = 0; j < l.size(); ++j)
        l.down(j).for_each([&](std::size_t i) {
            if (i != j) leq.emplace_back(i, j);
        });
    std::sort(leq.begin(), leq.end());
    return dump({{"group", g.spec().to_string()}, {"order", g.order()}, {"subgroups", subs}, {"leq", arrow_list(leq)}});
}

SubgroupLattice lattice_from_json(std::string_view text, const Limits& limits) {
    const json j = parse(text, "lattice");
    return guarded("lattice", [&] {
        SubgroupLattice l = enumerate_subgroups(build_group(GroupSpec::parse(j.at("group").get<std::string>()), limits),
                                                limits);
        const auto& subs = j.at("subgroups");
        if (subs.size() != l.size()) throw ParseError("subgroup count differs from the rebuilt lattice");
        for (std::size_t i = 0; i < l.size(); ++i)
            if (subs[i].at("elements").get<std::vector<std::size_t>>() != l.subgroup(i).to_indices() ||
                subs[i].at("class").get<std::size_t>() != l.class_of(i))
                throw ParseError("subgroup " + std::to_string(i) + " differs from the rebuilt lattice");
        return l;
    });
}

std::string classes_to_json(const SubgroupLattice& l, const ClassPoset& cp) {
    json classes = json::array();
    for (std::size_t c = 0; c < cp.classes.size(); ++c)
        classes.push_back({{"index", c},
                           {"rep", cp.classes[c].rep},
                           {"size", cp.classes[c].size},
                           {"order", cp.classes[c].order},
                           {"members", l.class_members(c)}});
    return dump({{"group", l.group().spec().to_string()},
                 {"classes", classes},
                 {"leq", arrow_list(cp.poset.strict_pairs())}});
}

std::string poset_to_json(const FinitePoset& p) {
    return dump({{"size", p.size()}, {"leq", arrow_list(p.strict_pairs())}, {"labels", p.labels()}});
}

FinitePoset poset_from_json(std::string_view text) {
    const json j = parse(text, "poset");
    return guarded("poset", [&] {
        const auto n = j.at("size").get<std::size_t>();
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        const auto pairs = arrows_of(j.at("leq"));
        for (auto [a, b] : pairs)
            if (a >= n || b >= n) throw ParseError("poset pair out of range");
        return FinitePoset::from_pairs(n, pairs, std::move(labels));
    });
}

FinitePoset load_poset(const std::string& path) { return poset_from_json(read_file(path)); }

std::string relation_to_json(const Relation& r, Carrier carrier, const std::string& group) {
    json j{{"carrier", carrier == Carrier::subgroups ? "subgroups" : "poset"}};
    if (carrier == Carrier::subgroups) j["group"] = group;
    j["size"] = r.size();
    j["arrows"] = arrow_list(r.arrows());
    return dump(j);
}

ParsedRelation relation_from_json(std::string_view text) {
    const json j = parse(text, "transfer system");
    return guarded("transfer system", [&] {
        const auto kind = j.at("carrier").get<std::string>();
        if (kind != "subgroups" && kind != "poset") throw ParseError("carrier must be 'subgroups' or 'poset'");
        ParsedRelation out{kind == "subgroups" ? Carrier::subgroups : Carrier::poset, std::nullopt, {}};
        if (j.contains("group")) out.group = j.at("group").get<std::string>();
        const auto arrows = arrows_of(j.at("arrows"));
        out.relation = relation_from_arrows(j.at("size").get<std::size_t>(), arrows);
        return out;
    });
}

std::vector<Arrow> load_arrows(const std::string& path) {
    const json j = parse(read_file(path), "arrows");
    return guarded("arrows", [&] { return arrows_of(j.is_object() ? j.at("arrows") : j); });
}

std::string lift_report_to_json(const LiftReport& rep, const std::string& group) {
    json systems = json::array();
    std::size_t w = 0;
    for (std::size_t i = 0; i < rep.total; ++i) {
        json s{{"arrows", arrow_list(rep.systems[i].arrows())}, {"liftable", static_cast<bool>(rep.verdicts[i])}};
        if (w < rep.witnesses.size() && rep.witnesses[w].first == i) {
            s["witness"] = {rep.witnesses[w].second.first, rep.witnesses[w].second.second};
            ++w;
        } else {
            s["witness"] = nullptr;
        }
        systems.push_back(std::move(s));
    }
    return dump({{"group", group},
                 {"poset_size", rep.poset_size},
                 {"total", rep.total},
                 {"liftable", rep.liftable},
                 {"systems", systems}});
}

std::string lossless_to_json(const SubgroupLattice& l, const LosslessVerdict& v, std::optional<bool> universally,
                             const CriteriaReport& criteria) {
    json j{{"group", l.group().spec().to_string()}, {"lossless", v.lossless}};
    if (v.witness) {
        const auto& w = *v.witness;
        j["witness"] = {{"h", w.h},
                        {"k", w.k},
                        {"g", w.g},
                        {"gk", w.gk},
                        {"h_order", l.order_of(w.h)},
                        {"k_order", l.order_of(w.k)},
                        {"g_label", l.group().label(w.g)}};
    } else {
        j["witness"] = nullptr;
    }
    j["universally_lossless"] = universally ? json(*universally) : json(nullptr);
    j["criteria"] = {{"solvable_t_group", criteria.solvable_t_group},
                     {"cyclic_normal_prime_index", criteria.cyclic_normal_prime_index},
                     {"derived_prime_order", criteria.derived_prime_order},
                     {"elementary_p2_by_cyclic", criteria.elementary_p2_by_cyclic}};
    return dump(j);
}

std::string conjecture_to_json(const ConjectureReport& rep) {
    json samples = json::array();
    for (std::size_t i = 0; i < rep.samples.size(); ++i) {
        const auto& s = rep.samples[i];
        json e{{"index", i},
               {"kind", s.kind},
               {"orbits", s.orbits},
               {"seed_arrows", arrow_list(s.seed)},
               {"arrow_count", s.arrow_count},
               {"valid", s.valid},
               {"round_trip", s.round_trip},
               {"decompose_stable", s.decompose_stable},
               {"pass", s.pass()}};
        e["failure"] = s.failure.empty() ? json(nullptr) : json(s.failure);
        e["disagreement"] = s.disagreement ? json{s.disagreement->first, s.disagreement->second} : json(nullptr);
        samples.push_back(std::move(e));
    }
    return dump({{"p", rep.p},
                 {"seed", rep.seed},
                 {"orbit_count", rep.orbit_count},
                 {"passed", rep.passed},
                 {"failed", rep.failed},
                 {"samples", samples}});
}

std::string poset_to_dot(const FinitePoset& p, const Relation* r) {
    std::ostringstream os;
    os << "digraph poset {\n  rankdir=BT;\n  node [shape=box, style=rounded];\n";
    for (std::size_t i = 0; i < p.size(); ++i) os << "  n" << i << " [label=" << quoted(p.label(i)) << "];\n";
    for (auto [a, b] : p.hasse_edges()) os << "  n" << a << " -> n" << b << " [color=gray, arrowhead=none];\n";
    red_arrows(os, r);
    os << "}\n";
    return os.str();
}

std::string lattice_to_dot(const SubgroupLattice& l, const Relation* r) {
    std::ostringstream os;
    os << "digraph subgroups {\n  rankdir=BT;\n  node [shape=box, style=\"rounded,filled\"];\n";
    const std::size_t colors = std::size(palette);
    for (std::size_t i = 0; i < l.size(); ++i)
        os << "  n" << i << " [label=" << quoted(std::to_string(i) + ": order " + std::to_string(l.order_of(i)))
           << ", fillcolor=" << quoted(palette[l.class_of(i) % colors]) << "];\n";
    for (std::size_t j = 0; j < l.size(); ++j)
        l.down(j).for_each([&](std::size_t i) {
            if (i == j) return;
            // Covering pairs only: nothing strictly between i and j.
            if ((l.up(i) & l.down(j)).count() == 2) os << "  n" << i << " -> n" << j << " [color=gray, arrowhead=none];\n";
        });
    red_arrows(os, r);
    os << "}\n";
    return os.str();
}

} // namespace normlift
