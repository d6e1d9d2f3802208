#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "normlift/error.hpp"
#include "normlift/io.hpp"

using namespace normlift;
using nlohmann::json;

namespace {

SubgroupLattice lat(const std::string& s) { return enumerate_subgroups(build_group(GroupSpec::parse(s))); }

std::size_t count(const std::string& text, const std::string& what) {
    std::size_t n = 0;
    for (auto pos = text.find(what); pos != std::string::npos; pos = text.find(what, pos + 1)) ++n;
    return n;
}

} // namespace

TEST_CASE("lattice JSON round-trip") {
    const auto l = lat("prod(C2,A4)");
    const std::string text = lattice_to_json(l);
    const json j = json::parse(text);
    CHECK(j.at("order") == 24);
    CHECK(j.at("subgroups").size() == 26);
    const auto back = lattice_from_json(text);
    CHECK(back.size() == l.size());
    for (std::size_t i = 0; i < l.size(); ++i) CHECK(back.subgroup(i) == l.subgroup(i));

    json tampered = j;
    tampered["subgroups"][3]["elements"] = json::array({0});
    CHECK_THROWS_AS(lattice_from_json(tampered.dump()), ParseError);
    CHECK_THROWS_AS(lattice_from_json("{not json"), ParseError);
    CHECK_THROWS_AS(lattice_from_json("{}"), ParseError);
}

TEST_CASE("poset JSON round-trip") {
    for (const auto& p : {chain(3), product(chain(1), chain(2)), diamond_with_tail(), divisor_lattice(30)}) {
        const auto back = poset_from_json(poset_to_json(p));
        CHECK(back == p);
        CHECK(back.labels() == p.labels());
    }
    CHECK(poset_from_json(R"({"size": 3, "leq": [[0, 1], [1, 2]]})").leq(0, 2));
    CHECK_THROWS_AS(poset_from_json(R"({"size": 2, "leq": [[0, 5]]})"), ParseError);
    CHECK_THROWS_AS(poset_from_json(R"({"size": 2, "leq": [[0, 1, 1]]})"), ParseError);
    CHECK_THROWS_AS(poset_from_json(R"({"size": 2, "leq": [[0, 1], [1, 0]]})"), InvalidArrow);
    CHECK(load_poset(NORMLIFT_TEST_DATA "/chain1x1.json").size() == 4);
}

TEST_CASE("relation JSON round-trip") {
    const auto l = lat("S3");
    const auto systems = enumerate_g_transfer_systems(l);
    for (const auto& r : systems) {
        const auto parsed = relation_from_json(relation_to_json(r, Carrier::subgroups, "S3"));
        CHECK(parsed.carrier == Carrier::subgroups);
        CHECK(parsed.group == std::optional<std::string>("S3"));
        CHECK(parsed.relation == r);
    }
    const Relation c = cat_closure(chain(2), std::vector<Arrow>{{0, 2}});
    const auto parsed = relation_from_json(relation_to_json(c, Carrier::poset));
    CHECK(parsed.carrier == Carrier::poset);
    CHECK_FALSE(parsed.group.has_value());
    CHECK(parsed.relation == c);
    CHECK_THROWS_AS(relation_from_json(R"({"carrier": "set", "size": 1, "arrows": []})"), ParseError);
}

TEST_CASE("report documents") {
    const auto l = lat("prod(C2,A4)");
    const auto v = is_lossless(l);
    const json lj = json::parse(lossless_to_json(l, v, false, lossless_criteria(l)));
    CHECK(lj.at("lossless") == false);
    CHECK(lj.at("witness").at("h") == v.witness->h);
    CHECK(lj.at("witness").at("h_order") == 4);
    CHECK(lj.at("universally_lossless") == false);

    const auto s3 = lat("S3");
    const auto cp = quotient_poset(s3);
    const json rj = json::parse(lift_report_to_json(lift_report(s3, cp), "S3"));
    CHECK(rj.at("total") == 10);
    CHECK(rj.at("liftable") == 9);
    std::size_t with_witness = 0;
    for (const auto& s : rj.at("systems")) with_witness += s.at("witness").is_null() ? 0 : 1;
    CHECK(with_witness == 1);

    const json cj = json::parse(classes_to_json(s3, cp));
    CHECK(cj.at("classes").size() == 4);
    CHECK(cj.at("classes")[1].at("members").size() == 3);
}

TEST_CASE("DOT output") {
    const FinitePoset p = product(chain(1), chain(1));
    const Relation r = cat_closure(p, std::vector<Arrow>{{1, 3}});
    const std::string dot = poset_to_dot(p, &r);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(count(dot, "color=gray") == 4);
    CHECK(count(dot, "color=red") == 2);
    CHECK(count(poset_to_dot(p), "color=red") == 0);

    const auto l = lat("S3");
    const std::string ldot = lattice_to_dot(l);
    CHECK(count(ldot, "arrowhead=none") == 8);
    CHECK(count(ldot, "fillcolor=") == 6);
}

TEST_CASE("file errors") {
    CHECK_THROWS_AS(read_file("/nonexistent/file.json"), ParseError);
    CHECK_THROWS_AS(load_arrows("/nonexistent/file.json"), ParseError);
}
