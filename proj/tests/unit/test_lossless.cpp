#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "normlift/io.hpp"
#include "normlift/lossless.hpp"

using namespace normlift;

namespace {

SubgroupLattice lat(const std::string& s) { return enumerate_subgroups(build_group(GroupSpec::parse(s))); }

std::vector<Element> members(const Bits& s) {
    std::vector<Element> out;
    s.for_each([&](std::size_t x) { out.push_back(static_cast<Element>(x)); });
    return out;
}

/// Losslessness straight from the definition, on element sets.
bool brute_lossless(const SubgroupLattice& l) {
    const Group& g = l.group();
    for (std::size_t h = 0; h < l.size(); ++h) {
        const Bits& hs = l.subgroup(h);
        const auto nh = members(normalizer(g, hs));
        for (std::size_t k = 0; k < l.size(); ++k) {
            if (!l.subgroup(k).is_subset_of(hs)) continue;
            for (Element x = 0; x < g.order(); ++x) {
                const Bits gk = conjugate_set(g, l.subgroup(k), x);
                if (!gk.is_subset_of(hs)) continue;
                bool found = false;
                for (Element y : nh)
                    if (conjugate_set(g, l.subgroup(k), y) == gk) {
                        found = true;
                        break;
                    }
                if (!found) return false;
            }
        }
    }
    return true;
}

bool brute_pronormal(const SubgroupLattice& l, std::size_t k) {
    const Group& g = l.group();
    const Bits& ks = l.subgroup(k);
    for (Element x = 0; x < g.order(); ++x) {
        const Bits gk = conjugate_set(g, ks, x);
        bool found = false;
        for (Element y : members(generated_subgroup(g, ks | gk)))
            if (conjugate_set(g, ks, y) == gk) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

const std::vector<std::string> order16 = {"c16",  "c4xc4", "c4xc2_by_c2", "c4_by_c4", "c8xc2", "mm16",  "d16",
                                          "sd16", "q16",   "c4xc2xc2",    "c2xd8",    "c2xq8", "pauli", "c2x4"};

std::string fixture(const std::string& name) { return "perm(" NORMLIFT_TEST_DATA "/order16/" + name + ".json)"; }

} // namespace

TEST_CASE("verdicts agree with the definition") {
    for (const char* s : {"C1", "C12", "prod(C2,C2)", "S3", "D4", "Q8", "Dic3", "A4", "S4", "D9", "prod(C2,A4)",
                          "SL2(3)", "AGL1(5)", "Dic5", "prod(S3,C2)", "AGL1(7)", "SD4", "MM4", "prod(C3,S3)"}) {
        CAPTURE(s);
        const auto l = lat(s);
        const auto v = is_lossless(l);
        CHECK(v.lossless == brute_lossless(l));
        CHECK(v.lossless == !v.witness.has_value());
        if (v.witness) CHECK(validate_witness(l, *v.witness));
    }
}

TEST_CASE("families that are lossless") {
    for (std::string s : {"C1", "C7", "C12", "prod(C2,prod(C2,C2))", "prod(C3,C6)", "D3", "D4", "D9", "D12", "Dic2",
                          "Dic3", "Dic7", "Q8", "SD4", "SD5", "MM4", "MM5", "SL2(2)", "SL2(3)", "SL2(5)", "AGL1(5)",
                          "AGL1(7)", "sd(9,8,2)"}) {
        CAPTURE(s);
        CHECK(is_lossless(lat(s)).lossless);
    }
}

TEST_CASE("p-groups of order at most p^3 are lossless") {
    for (std::string s : {"C8", "D4", "Q8", "prod(C4,C2)", "prod(C2,prod(C2,C2))", "C27", "prod(C9,C3)",
                          "prod(C3,prod(C3,C3))", "vsd(3,2,3,[[1,1],[0,1]])", "sd(9,4,3)"}) {
        CAPTURE(s);
        CHECK(is_lossless(lat(s)).lossless);
    }
}

TEST_CASE("groups of order 16 are pairwise non-isomorphic and lossless") {
    std::vector<Group> groups;
    for (const auto& name : order16) {
        CAPTURE(name);
        groups.push_back(build_group(GroupSpec::parse(fixture(name))));
        CHECK(groups.back().order() == 16);
        CHECK(is_lossless(enumerate_subgroups(groups.back())).lossless);
    }
    for (std::size_t a = 0; a < groups.size(); ++a)
        for (std::size_t b = a + 1; b < groups.size(); ++b) {
            CAPTURE(order16[a]);
            CAPTURE(order16[b]);
            CHECK_FALSE(is_isomorphic(groups[a], groups[b]));
        }
}

TEST_CASE("lossy groups") {
    for (std::string s : {"prod(C2,A4)", "vsd(3,3,3,[[1,1,1],[0,1,1],[0,0,1]])", "sd(27,8,6)", "SL2(7)"}) {
        CAPTURE(s);
        const auto l = lat(s);
        const auto v = is_lossless(l);
        REQUIRE_FALSE(v.lossless);
        REQUIRE(v.witness.has_value());
        const auto& w = *v.witness;
        CHECK(validate_witness(l, w));
        CHECK(l.leq(w.k, w.h));
        CHECK(l.leq(w.gk, w.h));
        CHECK(w.k != w.gk);
        CHECK(l.subgroup(w.gk) == conjugate_set(l.group(), l.subgroup(w.k), w.g));
    }
}

TEST_CASE("C2 x A4 witness matches the golden file") {
    const auto golden = nlohmann::json::parse(read_file(NORMLIFT_TEST_DATA "/c2xa4_golden.json"));
    const auto l = lat(golden.at("group").get<std::string>());
    const auto v = is_lossless(l);
    REQUIRE(v.witness.has_value());
    const auto& gw = golden.at("lossless_witness");
    CHECK(v.witness->h == gw.at("h").get<std::size_t>());
    CHECK(v.witness->k == gw.at("k").get<std::size_t>());
    CHECK(v.witness->g == gw.at("g").get<Element>());
    CHECK(v.witness->gk == gw.at("gk").get<std::size_t>());
    // H is a Klein four containing exactly two of the three C2 classes.
    CHECK(l.order_of(v.witness->h) == 4);
    CHECK_FALSE(l.is_cyclic(v.witness->h));

    LosslessWitness bogus = *v.witness;
    bogus.gk = bogus.k;
    CHECK_FALSE(validate_witness(l, bogus));
}

TEST_CASE("quotients of lossless groups are lossless") {
    for (const char* s : {"D9", "Dic6", "SL2(3)", "AGL1(7)", "prod(S3,C2)", "SD4"}) {
        CAPTURE(s);
        const auto l = lat(s);
        REQUIRE(is_lossless(l).lossless);
        for (std::size_t n = 0; n < l.size(); ++n) {
            if (!l.is_normal(n)) continue;
            const auto q = quotient_group(l.group(), l.subgroup(n));
            CHECK(is_lossless(enumerate_subgroups(q.group)).lossless);
        }
    }
}

TEST_CASE("pronormality") {
    const auto s3 = lat("S3");
    for (std::size_t i = 0; i < s3.size(); ++i) CHECK(is_pronormal(s3, i));
    for (const char* s : {"S4", "D4", "prod(C2,A4)", "A5", "vsd(3,3,3,[[1,1,1],[0,1,1],[0,0,1]])"}) {
        CAPTURE(s);
        const auto l = lat(s);
        bool all = true;
        for (std::size_t i = 0; i < l.size(); ++i) {
            const bool p = is_pronormal(l, i);
            CHECK(p == brute_pronormal(l, i));
            all = all && p;
        }
        CHECK(is_pronormal(l, l.top()));
        if (all) CHECK(is_lossless(l).lossless);
    }
    const auto vsd = lat("vsd(3,3,3,[[1,1,1],[0,1,1],[0,0,1]])");
    const auto w = *is_lossless(vsd).witness;
    CHECK_FALSE(is_pronormal(vsd, w.k));
}

TEST_CASE("subnormality and T-groups") {
    const auto d4 = lat("D4");
    bool found = false;
    for (std::size_t i = 0; i < d4.size(); ++i)
        if (d4.order_of(i) == 2 && !d4.is_normal(i)) {
            CHECK(is_subnormal(d4, i));
            found = true;
        }
    CHECK(found);
    CHECK_FALSE(is_t_group(d4));
    CHECK(is_t_group(lat("S3")));
    CHECK(is_t_group(lat("prod(C4,C6)")));
    CHECK(is_t_group(lat("Q8")));
    for (const char* s : {"S3", "D4", "Q8", "A4", "S4", "Dic3", "prod(C2,A4)", "AGL1(7)", "A5", "D9", "SL2(3)"}) {
        CAPTURE(s);
        const auto l = lat(s);
        CHECK(is_t_group(l) == is_t_group_two_step(l));
        for (std::size_t i = 0; i < l.size(); ++i)
            if (l.is_normal(i)) CHECK(is_subnormal(l, i));
    }
    // A5 is simple: no proper nontrivial subnormal subgroup.
    const auto a5 = lat("A5");
    for (std::size_t i = 1; i + 1 < a5.size(); ++i) CHECK_FALSE(is_subnormal(a5, i));
}

TEST_CASE("universal losslessness") {
    CHECK(is_universally_lossless(lat("C12")));
    CHECK(is_universally_lossless(lat("SL2(3)")));
    CHECK(is_universally_lossless(lat("SL2(5)")));
    CHECK(is_universally_lossless(lat("S3")));
    CHECK_FALSE(is_universally_lossless(lat("prod(C2,C2)")));
    CHECK_FALSE(is_universally_lossless(lat("D4")));
}

TEST_CASE("sufficient criteria") {
    const auto d9 = lossless_criteria(lat("D9"));
    CHECK(d9.cyclic_normal_prime_index);
    const auto q8 = lossless_criteria(lat("Q8"));
    CHECK(int(q8.solvable_t_group) + int(q8.cyclic_normal_prime_index) + int(q8.derived_prime_order) >= 2);
    CHECK_FALSE(lossless_criteria(lat("SL2(7)")).any());
    CHECK(lossless_criteria(lat("S3")).derived_prime_order);
    CHECK(lossless_criteria(lat("vsd(3,2,4,[[0,2],[1,0]])")).elementary_p2_by_cyclic);
    CHECK_FALSE(lossless_criteria(lat("prod(C2,A4)")).any());

    for (const char* s : {"C1", "C12", "S3", "D4", "Q8", "Dic3", "A4", "S4", "D9", "prod(C2,A4)", "SL2(3)",
                          "AGL1(5)", "AGL1(7)", "A5", "SL2(5)", "vsd(3,2,4,[[0,2],[1,0]])", "sd(27,8,6)",
                          "vsd(3,3,3,[[1,1,1],[0,1,1],[0,0,1]])"}) {
        CAPTURE(s);
        const auto l = lat(s);
        if (lossless_criteria(l).any()) CHECK(is_lossless(l).lossless);
    }
}
