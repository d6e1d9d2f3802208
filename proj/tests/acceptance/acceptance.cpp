// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff every line passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "figures.hpp"
#include "json.hpp"
#include "normlift/io.hpp"
#include "normlift/lifting.hpp"
#include "normlift/lossless.hpp"
#include "normlift/mcf.hpp"
#include "normlift/sl2split.hpp"
#include "oracles.hpp"

using namespace normlift;

namespace {

// Runtime limits in seconds.
constexpr double limit_c1 = 1.0;
constexpr double limit_c2 = 30.0;
constexpr double limit_c3 = 60.0;
constexpr double limit_c4 = 600.0;
constexpr double limit_c5 = 300.0;
constexpr double limit_c9 = 1800.0;
constexpr std::size_t conjecture_samples = 200;
constexpr std::uint64_t conjecture_seed = 1;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) detail << "; ";
            else detail.str("");
            ok = false;
            detail << "failed: " << what;
        }
    }
};

SubgroupLattice lat(const std::string& s) { return enumerate_subgroups(build_group(GroupSpec::parse(s))); }

/// Liftability on the abstract grid D_n x D_t (element a * |D_t| + b): an arrow between
/// different base coordinates needs the arrow from its base point, (a, 0) -> source or -> target.
bool grid_liftable(std::size_t t_size, const Relation& r, bool to_target) {
    for (auto [x, y] : r.arrows()) {
        const std::size_t ax = x / t_size, ay = y / t_size;
        if (ax == ay) continue;
        const std::size_t base = ax * t_size;
        if (!r.has(base, to_target ? y : x)) return false;
    }
    return true;
}

struct GridCounts {
    std::size_t total = 0;
    std::size_t liftable = 0;
    bool forms_agree = true;
};

GridCounts grid_counts(const FinitePoset& grid, std::size_t t_size) {
    GridCounts c;
    for (const auto& r : enumerate_cat_transfer_systems(grid)) {
        ++c.total;
        const bool a = grid_liftable(t_size, r, true);
        c.forms_agree = c.forms_agree && a == grid_liftable(t_size, r, false);
        c.liftable += a ? 1 : 0;
    }
    return c;
}

/// Total / liftable on the abstract grid, lift report on the group and direct G-enumeration.
void frame_counts(Outcome& out, const std::string& spec, const FinitePoset& grid, std::size_t t_size,
                  std::size_t total, std::size_t liftable) {
    const auto g = grid_counts(grid, t_size);
    out.require(g.total == total, spec + " grid total " + std::to_string(g.total));
    out.require(g.liftable == liftable, spec + " grid liftable " + std::to_string(g.liftable));
    out.require(g.forms_agree, spec + " base conditions disagree");

    const auto l = lat(spec);
    const auto cp = quotient_poset(l);
    out.require(is_isomorphic_poset(cp.poset, grid).has_value(), spec + " class poset differs from the grid");
    const auto rep = lift_report(l, cp);
    out.require(rep.total == total, spec + " class-poset total " + std::to_string(rep.total));
    out.require(rep.liftable == liftable, spec + " class-poset liftable " + std::to_string(rep.liftable));
    const std::size_t direct = enumerate_g_transfer_systems(l).size();
    out.require(direct == liftable, spec + " direct enumeration " + std::to_string(direct));
    if (out.ok)
        out.detail << spec << ": " << total << " total, " << liftable << " liftable, " << direct << " direct";
}

void c1(Outcome& out) {
    const auto square = enumerate_cat_transfer_systems(product(chain(1), chain(1)));
    out.require(square.size() == 10, "[1]x[1] count " + std::to_string(square.size()));
    const auto l = lat("S3");
    const auto cp = quotient_poset(l);
    const auto rep = lift_report(l, cp);
    out.require(rep.total == 10, "S3 class-poset total " + std::to_string(rep.total));
    out.require(rep.liftable == 9, "S3 liftable " + std::to_string(rep.liftable));
    const std::size_t direct = enumerate_g_transfer_systems(l).size();
    out.require(direct == 9, "S3 direct enumeration " + std::to_string(direct));
    if (out.ok) out.detail << "[1]x[1]: 10; S3: 10 total, 9 liftable, 9 direct";
}

void c2(Outcome& out) { frame_counts(out, "D9", product(divisor_lattice(9), divisor_lattice(2)), 2, 68, 56); }

void c3(Outcome& out) { frame_counts(out, "AGL1(5)", product(divisor_lattice(5), divisor_lattice(4)), 3, 68, 59); }

void c4(Outcome& out) { frame_counts(out, "AGL1(7)", product(divisor_lattice(7), divisor_lattice(6)), 4, 450, 400); }

void c5(Outcome& out) {
    std::size_t checked = 0;
    auto lossless = [&](const std::string& spec, bool expected) {
        const auto v = is_lossless(lat(spec));
        out.require(v.lossless == expected, spec + (expected ? " lossy" : " lossless"));
        ++checked;
    };
    for (const char* s : {"C1", "C2", "C12", "C27", "prod(C2,C2)", "prod(C4,C2)", "prod(C3,C3)", "prod(C2,prod(C2,C2))",
                          "prod(C3,C6)", "prod(C4,C4)", "prod(C5,C10)"})
        lossless(s, true);
    for (const char* name : {"c16", "c4xc4", "c4xc2_by_c2", "c4_by_c4", "c8xc2", "mm16", "d16", "sd16", "q16",
                             "c4xc2xc2", "c2xd8", "c2xq8", "pauli", "c2x4"})
        lossless(std::string("perm(") + NORMLIFT_TEST_DATA "/order16/" + name + ".json)", true);
    for (int n = 3; n <= 12; ++n) lossless("D" + std::to_string(n), true);
    for (int n = 2; n <= 7; ++n) lossless("Dic" + std::to_string(n), true);
    for (const char* s : {"SD4", "SD5", "MM4", "MM5", "SL2(2)", "SL2(3)", "SL2(5)"}) lossless(s, true);

    for (const char* s : {"prod(C2,A4)", "vsd(3,3,3,[[1,1,1],[0,1,1],[0,0,1]])", "SL2(7)"}) {
        const auto l = lat(s);
        const auto v = is_lossless(l);
        out.require(!v.lossless, std::string(s) + " lossless");
        out.require(v.witness && validate_witness(l, *v.witness), std::string(s) + " witness does not validate");
        ++checked;
    }
    for (const char* s : {"SL2(3)", "SL2(5)"})
        out.require(is_universally_lossless(lat(s)), std::string(s) + " not universally lossless");
    if (out.ok) out.detail << checked << " verdicts, SL2(3) and SL2(5) universally lossless";
}

void c6(Outcome& out) {
    std::size_t pairs = 0, systems = 0;
    for (const char* s : {"S3", "D9", "AGL1(5)"}) {
        const auto l = lat(s);
        const auto cp = quotient_poset(l);
        const auto st = mcf_structure(l);
        out.require(st.has_value(), std::string(s) + " has no Frobenius structure");
        if (!st) continue;
        const auto gs = enumerate_g_transfer_systems(l);
        const auto cs = enumerate_cat_transfer_systems(cp.poset);
        std::vector<Relation> push;
        for (const auto& rg : gs) {
            push.push_back(pi_pushforward(l, cp, rg));
            out.require(pi_preimage(l, cp, push.back()) == rg && pi_star(l, cp, push.back()) == rg,
                        std::string(s) + " unit identity");
        }
        std::set<std::vector<Arrow>> images, all;
        for (const auto& rg : gs) all.insert(rg.arrows());
        for (const auto& rc : cs) {
            const Relation up = pi_star(l, cp, rc);
            for (std::size_t i = 0; i < gs.size(); ++i) {
                out.require(gs[i].contains(up) == push[i].contains(rc), std::string(s) + " adjunction law");
                ++pairs;
            }
            const bool a = is_liftable(l, cp, rc);
            out.require(a == is_liftable_via_meets(l, cp, rc), std::string(s) + " meet criterion");
            out.require(a == mcf_liftable(l, cp, *st, rc), std::string(s) + " base criterion");
            if (a) out.require(images.insert(up.arrows()).second, std::string(s) + " pi_star not injective");
            ++systems;
        }
        out.require(images == all, std::string(s) + " pi_star image differs from the G-enumeration");
    }
    if (out.ok) out.detail << pairs << " adjunction pairs, " << systems << " class-poset systems";
}

void c7(Outcome& out) {
    std::size_t laws = 0;
    for (const char* s : {"D9", "AGL1(5)", "AGL1(7)", "D5", "D7"}) {
        const auto l = lat(s);
        const Group& g = l.group();
        const auto st = mcf_structure(l);
        out.require(st.has_value(), std::string(s) + " has no Frobenius structure");
        if (!st) continue;
        for (std::size_t k = 0; k < l.size(); ++k) {
            const Bits nrm = normalizer(g, l.subgroup(k));
            for (Element x = 0; x < g.order(); ++x) {
                if (nrm.test(x)) continue;
                out.require((l.subgroup(k) & conjugate_set(g, l.subgroup(k), x)) == l.subgroup(base(l, *st, k)),
                            std::string(s) + " intersection law");
                ++laws;
            }
            out.require(l.is_normal(k) == (l.leq(k, st->kernel) || base(l, *st, k) == st->kernel),
                        std::string(s) + " normality law");
            for (std::size_t j = 0; j < l.size(); ++j)
                if (l.order_of(j) == l.order_of(k))
                    out.require(l.class_of(j) == l.class_of(k), std::string(s) + " same-order conjugacy");
            laws += 2;
        }
        const auto cp = quotient_poset(l);
        const auto gi = grid_iso(l, cp, *st);
        bool iso = true;
        for (std::size_t a = 0; a < cp.classes.size(); ++a)
            for (std::size_t b = 0; b < cp.classes.size(); ++b)
                iso = iso && cp.poset.leq(a, b) == gi.grid.leq(gi.to_grid[a], gi.to_grid[b]);
        out.require(iso && gi.grid.size() == cp.classes.size(), std::string(s) + " grid isomorphism");
        ++laws;
    }
    if (out.ok) out.detail << laws << " law instances";
}

void c8(Outcome& out) {
    const auto golden = nlohmann::json::parse(read_file(NORMLIFT_TEST_DATA "/c2xa4_golden.json"));
    const auto l = lat("prod(C2,A4)");
    const auto cp = quotient_poset(l);
    const auto orbits = arrow_orbits(l);
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        const std::vector<Arrow> seed{orbits[o].front()};
        const Relation r = g_closure(l, seed);
        const Relation back = pi_star(l, cp, pi_pushforward(l, cp, r));
        if (back == r) continue;
        const auto& conv = golden.at("converse");
        out.require(o == conv.at("orbit").get<std::size_t>(), "first orbit " + std::to_string(o) + " differs from golden");
        out.require(seed[0] == Arrow{conv.at("seed")[0].get<std::size_t>(), conv.at("seed")[1].get<std::size_t>()},
                    "seed differs from golden");
        out.require(r.arrow_count() == conv.at("arrow_count").get<std::size_t>(), "arrow count differs from golden");
        out.require(back.arrow_count() == conv.at("lifted_arrow_count").get<std::size_t>(),
                    "lifted arrow count differs from golden");
        if (out.ok)
            out.detail << "orbit " << o << " seed " << seed[0].first << "->" << seed[0].second << ": " << r.arrow_count()
                       << " arrows, " << back.arrow_count() << " after lifting";
        return;
    }
    out.require(false, "no single-orbit closure differs from its lift");
}

void c9(Outcome& out) {
    const Sl2Frame f = build_frame(13);
    for (const auto& c : f.checks) out.require(c.ok, "frame check " + c.name);
    out.require(f.c4_nodes.size() == 3, "C4 classes in D_G: " + std::to_string(f.c4_nodes.size()));
    out.require(figures::class_poset_matches(f, figures::sl2_13_classes()), "class poset or U_G differs from the diagram");
    out.require(figures::d_poset_matches(f, figures::sl2_13_d()), "D_G or I_G differs from the diagram");
    if (!out.ok) return;
    const auto rep = conjecture_check(f, conjecture_samples, conjecture_seed);
    out.detail << rep.samples.size() << " samples (" << rep.orbit_count << " single-orbit, " << conjecture_samples
               << " random, seed " << conjecture_seed << "): " << rep.passed << " pass";
    if (rep.failed > 0) {
        // A failing sample is a counterexample to the conjecture, reported as a finding.
        for (std::size_t i = 0; i < rep.samples.size(); ++i)
            if (!rep.samples[i].pass()) {
                out.detail << "; FINDING: counterexample at sample " << i << " (" << rep.samples[i].kind << ", "
                           << rep.samples[i].failure << ")";
                break;
            }
    }
}

void c10(Outcome& out) {
    std::size_t carriers = 0;
    auto compare = [&](const FinitePoset& p, const std::string& name) {
        if (p.strict_pairs().size() > 12) return;
        const auto leq = [&](std::size_t i, std::size_t j) { return p.leq(i, j); };
        const std::size_t naive = oracle::naive_count(p.size(), leq);
        const auto fast = enumerate_cat_transfer_systems(p, EnumerationStrategy::subset_closure);
        out.require(fast.size() == naive, name + " subset closure " + std::to_string(fast.size()) + " vs naive " +
                                              std::to_string(naive));
        out.require(fast == enumerate_cat_transfer_systems(p), name + " strategies disagree");
        ++carriers;
    };
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<Arrow> pairs;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
            std::vector<Arrow> given;
            for (std::size_t b = 0; b < pairs.size(); ++b)
                if (mask >> b & 1u) given.push_back(pairs[b]);
            const auto p = FinitePoset::from_pairs(n, given);
            // Keep one representative per transitively closed relation.
            if (p.strict_pairs() != given) continue;
            compare(p, "poset " + std::to_string(n) + "/" + std::to_string(mask));
        }
    }
    for (const char* s : {"S3", "D9", "AGL1(5)", "Q8", "D4", "prod(C2,C2)"})
        compare(quotient_poset(lat(s)).poset, std::string(s) + " classes");
    compare(product(chain(2), chain(1)), "[2]x[1]");
    compare(diamond_with_tail(), "tailed diamond");

    const std::size_t expected[] = {2, 5, 14, 42};
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto c = chain(n);
        const std::size_t naive = oracle::naive_count(c.size(), [&](std::size_t i, std::size_t j) { return c.leq(i, j); });
        out.require(naive == expected[n - 1], "chain " + std::to_string(n) + " naive count " + std::to_string(naive));
        out.require(enumerate_cat_transfer_systems(c).size() == expected[n - 1], "chain " + std::to_string(n));
    }
    if (out.ok) out.detail << carriers << " carriers; chains 2, 5, 14, 42";
}

struct Criterion {
    int id;
    double limit;
    std::function<void(Outcome&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{{1, limit_c1, c1},  {2, limit_c2, c2}, {3, limit_c3, c3}, {4, limit_c4, c4},
                                          {5, limit_c5, c5},  {6, 0, c6},        {7, 0, c7},        {8, 0, c8},
                                          {9, limit_c9, c9},  {10, 0, c10}};
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit > 0 && secs > c.limit) {
            std::ostringstream what;
            what << "runtime " << secs << " s over " << c.limit << " s";
            out.require(false, what.str());
        }
        if (!out.ok) ++failed;
        std::printf("criterion %2d: %s  %.3f s  %s\n", c.id, out.ok ? "PASS" : "FAIL", secs, out.detail.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
