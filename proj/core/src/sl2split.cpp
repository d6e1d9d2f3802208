#include "normlift/sl2split.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "normlift/error.hpp"
#include "normlift/lossless.hpp"
#include "normlift/parallel.hpp"

namespace normlift {

namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Least-indexed cyclic subgroup of the given order.
std::size_t cyclic_of_order(const SubgroupLattice& l, std::size_t order) {
    for (std::size_t i = 0; i < l.size(); ++i)
        if (l.order_of(i) == order && l.is_cyclic(i)) return i;
    return npos;
}

std::vector<std::size_t> members_of(const SubgroupLattice& l, std::size_t i) {
    return l.class_members(l.class_of(i));
}

std::string arrow_text(const Arrow& a) {
    return "(" + std::to_string(a.first) + ", " + std::to_string(a.second) + ")";
}

std::string describe(const Diagnosis& d) {
    return d.axiom + " at " + arrow_text(d.arrow) + ", missing " + arrow_text(d.missing);
}

/// Image of `r` along `map`, on a carrier of size `n`.
Relation image(const Relation& r, const std::vector<std::size_t>& map, std::size_t n) {
    Relation out(n);
    for (auto [a, b] : r.arrows()) out.add(map[a], map[b]);
    return out;
}

void build_d(Sl2Frame& f) {
    const SubgroupLattice& l = *f.lattice;
    const auto gens = subgroup_generators(l.group(), l.subgroup(f.h_eps));
    f.d_of_subgroup.assign(l.size(), npos);
    std::vector<std::vector<std::size_t>> nodes;
    l.down(f.h_eps).for_each([&](std::size_t k) {
        if (f.d_of_subgroup[k] != npos) return;
        const std::size_t node = nodes.size();
        std::vector<std::size_t> orbit{k};
        f.d_of_subgroup[k] = node;
        for (std::size_t q = 0; q < orbit.size(); ++q)
            for (Element s : gens) {
                const std::size_t j = l.act(s, orbit[q]);
                if (f.d_of_subgroup[j] == npos) {
                    f.d_of_subgroup[j] = node;
                    orbit.push_back(j);
                }
            }
        nodes.push_back(std::move(orbit));
    });
    f.d_top = nodes.size();
    f.d_of_subgroup[l.top()] = f.d_top;
    const std::size_t n = nodes.size() + 1;
    std::vector<Bits> down(n, Bits(n));
    std::vector<std::string> labels;
    for (std::size_t b = 0; b < nodes.size(); ++b) {
        const std::size_t rep = nodes[b].front();
        f.d_rep.push_back(rep);
        for (std::size_t a = 0; a < nodes.size(); ++a)
            for (std::size_t m : nodes[a])
                if (l.leq(m, rep)) {
                    down[b].set(a);
                    break;
                }
        down[f.d_top].set(b);
        labels.push_back("[" + std::to_string(rep) + "]");
    }
    f.d_rep.push_back(l.top());
    down[f.d_top].set(f.d_top);
    labels.push_back("[G]");
    f.d_poset = FinitePoset::from_down_sets(std::move(down), std::move(labels));
    for (std::size_t node = 0; node < n; ++node) {
        f.psi_d.push_back(f.cp.pi[f.d_rep[node]]);
        const std::size_t rep = f.d_rep[node];
        if (l.order_of(rep) == 4 && l.is_cyclic(rep)) f.c4_nodes.push_back(node);
    }
}

void build_u_and_i(Sl2Frame& f) {
    const SubgroupLattice& l = *f.lattice;
    const std::size_t top_class = f.cp.pi[l.top()];
    f.u_of_class.assign(f.cp.poset.size(), npos);
    for (std::size_t c = 0; c < f.cp.poset.size(); ++c)
        if (c == top_class || f.in_ul.test(f.cp.classes[c].rep)) {
            f.u_of_class[c] = f.psi_u.size();
            f.psi_u.push_back(c);
        }
    f.u_poset = f.cp.poset.induced(f.psi_u);
    std::vector<std::size_t> keep;
    for (std::size_t node = 0; node < f.d_poset.size(); ++node)
        if (f.u_of_class[f.psi_d[node]] != npos) keep.push_back(node);
    f.i_poset = f.d_poset.induced(keep);
    f.phi_d = keep;
    for (std::size_t node : keep) f.phi_u.push_back(f.u_of_class[f.psi_d[node]]);
}

void run_checks(Sl2Frame& f, const Limits& limits) {
    const SubgroupLattice& l = *f.lattice;
    const Group& g = l.group();
    const unsigned p = f.p;
    const std::size_t he_order = 2 * static_cast<std::size_t>(static_cast<int>(p) + f.eps);
    f.checks.push_back({"H_eps has order 2(p+eps)", l.order_of(f.h_eps) == he_order});

    const Group dic = build_group(GroupSpec(family::Dicyclic{static_cast<unsigned>(he_order / 4)}), limits);
    const auto he = subgroup_as_group(g, l.subgroup(f.h_eps));
    f.checks.push_back({"H_eps is dicyclic", is_isomorphic(he.group, dic, limits)});

    const std::size_t t_minus = cyclic_of_order(l, p - 1);
    const std::size_t t_plus = cyclic_of_order(l, p + 1);
    bool center_inside = l.order_of(f.center) == 2;
    for (std::size_t t : {t_minus, t_plus})
        for (std::size_t m : members_of(l, l.normalizer_of(t)))
            if (!l.leq(f.center, m)) center_inside = false;
    f.checks.push_back({"center of order 2 inside every torus normalizer", center_inside});
    if (p >= 5) {
        bool met = false;
        const auto minus = members_of(l, l.normalizer_of(t_minus));
        const auto plus = members_of(l, l.normalizer_of(t_plus));
        for (std::size_t a : minus)
            for (std::size_t b : plus)
                if (l.meet(a, b) == f.center) met = true;
        f.checks.push_back({"center equals some intersection H_- ∩ H_+", met});
    }

    const std::size_t borel = static_cast<std::size_t>(p) * (p - 1);
    const std::size_t other_torus = 2 * static_cast<std::size_t>(static_cast<int>(p) - f.eps);
    bool classified = true;
    for (std::size_t i = 0; i < f.maximal_classes.size(); ++i) {
        const std::size_t rep = l.class_rep(f.maximal_classes[i]);
        const std::size_t o = l.order_of(rep);
        const bool is_h_eps = l.class_of(rep) == l.class_of(f.h_eps);
        const bool listed = o == borel || o == 24 || o == 120 || o == other_torus;
        if (is_h_eps ? f.maximal_ul[i] : (!listed || !f.maximal_ul[i])) classified = false;
    }
    f.checks.push_back({"maximal subgroups: H_eps lossy, the listed ones universally lossless", classified});
}

} // namespace

Sl2Frame build_frame(unsigned p, const Limits& limits) {
    if (!is_prime(p) || (p % 8 != 3 && p % 8 != 5)) throw BadPrime("p must be a prime with p = 3 or 5 mod 8");
    Sl2Frame f;
    f.p = p;
    f.eps = (p + 1) % 8 == 4 ? 1 : -1;
    auto lat = std::make_shared<SubgroupLattice>(
        enumerate_subgroups(build_group(GroupSpec(family::SL2{p}), limits), limits));
    f.lattice = lat;
    const SubgroupLattice& l = *lat;
    const Group& g = l.group();
    f.cp = quotient_poset(l);

    const std::size_t torus = cyclic_of_order(l, static_cast<std::size_t>(static_cast<int>(p) + f.eps));
    if (torus == npos) throw InvalidTriple("no torus of order p + eps");
    f.h_eps = l.normalizer_of(torus);
    const auto z = l.index_of(normlift::center(g));
    f.center = z ? *z : 0;

    f.in_ul = Bits(l.size());
    for (std::size_t c = 0; c < l.class_count(); ++c) {
        const std::size_t rep = l.class_rep(c);
        if (rep == l.top() || l.up(rep).count() != 2) continue;
        f.maximal_classes.push_back(c);
        const auto sub = subgroup_as_group(g, l.subgroup(rep));
        const bool ul = is_universally_lossless(enumerate_subgroups(sub.group, limits), limits);
        f.maximal_ul.push_back(ul);
        if (ul)
            for (std::size_t m : l.class_members(c)) f.in_ul |= l.down(m);
    }

    build_d(f);
    build_u_and_i(f);

    f.into_h_eps.assign(l.size(), npos);
    const Bits& below = l.down(f.h_eps);
    for (std::size_t k = 0; k < l.size(); ++k)
        for (Element x = 0; x < g.order(); ++x)
            if (below.test(l.act(x, k))) {
                f.into_h_eps[k] = x;
                break;
            }

    run_checks(f, limits);
    return f;
}

SplitTransferSystem decompose(const Sl2Frame& f, const Relation& rg) {
    const SubgroupLattice& l = *f.lattice;
    if (rg.size() != l.size()) throw CarrierMismatch("relation size differs from Sub(G)");
    SplitTransferSystem t{Relation(f.d_poset.size()), Relation(f.i_poset.size()), Relation(f.u_poset.size())};
    for (auto [k, h] : rg.arrows()) {
        const std::size_t dk = f.d_of_subgroup[k], dh = f.d_of_subgroup[h];
        if (dk != npos && dh != npos) t.r_d.add(dk, dh);
        const std::size_t uk = f.u_of_class[f.cp.pi[k]], uh = f.u_of_class[f.cp.pi[h]];
        if (uk != npos && uh != npos) t.r_u.add(uk, uh);
    }
    for (std::size_t a = 0; a < f.phi_d.size(); ++a)
        for (std::size_t b = 0; b < f.phi_d.size(); ++b)
            if (a != b && t.r_d.has(f.phi_d[a], f.phi_d[b])) t.r_i.add(a, b);
    return t;
}

SplitDiagnosis is_split_transfer_system(const Sl2Frame& f, const SplitTransferSystem& t) {
    if (t.r_d.size() != f.d_poset.size() || t.r_i.size() != f.i_poset.size() || t.r_u.size() != f.u_poset.size())
        return {false, "carrier", "component sizes differ from the frame"};
    if (auto d = check_cat_transfer_system(f.d_poset, t.r_d); !d) return {false, "R_D", describe(d)};
    if (auto d = check_cat_transfer_system(f.i_poset, t.r_i); !d) return {false, "R_I", describe(d)};
    if (auto d = check_cat_transfer_system(f.u_poset, t.r_u); !d) return {false, "R_U", describe(d)};

    std::size_t to_top = 0;
    for (std::size_t node : f.c4_nodes) to_top += t.r_d.has(node, f.d_top) ? 1 : 0;
    if (to_top != 0 && to_top != f.c4_nodes.size())
        return {false, "C4 saturation",
                std::to_string(to_top) + " of " + std::to_string(f.c4_nodes.size()) + " C4 nodes reach [G]"};

    const Relation di = image(t.r_i, f.phi_d, f.d_poset.size());
    for (std::size_t a : f.phi_d)
        for (std::size_t b : f.phi_d)
            if (t.r_d.has(a, b) != di.has(a, b)) return {false, "D compatibility", "D arrow " + arrow_text({a, b})};

    Bits in_u(f.u_poset.size());
    for (std::size_t node : f.phi_u) in_u.set(node);
    Relation ui(f.u_poset.size());
    std::optional<Arrow> u_fail;
    for (auto [a, b] : t.r_i.arrows()) ui.add(f.phi_u[a], f.phi_u[b]);
    in_u.for_each([&](std::size_t a) {
        in_u.for_each([&](std::size_t b) {
            if (!u_fail && t.r_u.has(a, b) != ui.has(a, b)) u_fail = Arrow{a, b};
        });
    });
    if (u_fail) return {false, "U compatibility", "U arrow " + arrow_text(*u_fail)};
    return {};
}

Relation lift_split(const Sl2Frame& f, const SplitTransferSystem& t) {
    if (auto d = is_split_transfer_system(f, t); !d) throw InvalidTriple(d.condition + ": " + d.detail);
    const SubgroupLattice& l = *f.lattice;
    Relation r(l.size());
    const std::size_t top = l.top();
    const auto u_of = [&](std::size_t k) { return f.u_of_class[f.cp.pi[k]]; };
    for (std::size_t h = 0; h < l.size(); ++h)
        l.down(h).for_each([&](std::size_t k) {
            if (k == h) return;
            bool arrow = false;
            if (h == top) {
                if (f.in_ul.test(k)) {
                    arrow = t.r_u.has(u_of(k), u_of(top));
                } else {
                    const std::size_t x = f.into_h_eps[k];
                    if (x == npos) throw InvalidTriple("subgroup outside every maximal subgroup of the frame");
                    arrow = t.r_d.has(f.d_of_subgroup[l.act(static_cast<Element>(x), k)], f.d_top);
                }
            } else if (f.in_ul.test(h)) {
                arrow = t.r_u.has(u_of(k), u_of(h));
            } else {
                const std::size_t x = f.into_h_eps[h];
                if (x == npos) throw InvalidTriple("subgroup outside every maximal subgroup of the frame");
                const auto e = static_cast<Element>(x);
                arrow = t.r_d.has(f.d_of_subgroup[l.act(e, k)], f.d_of_subgroup[l.act(e, h)]);
            }
            if (arrow) r.add(k, h);
        });
    return r;
}

ConjectureReport conjecture_check(const Sl2Frame& f, std::size_t random_samples, std::uint64_t seed,
                                  bool pair_seeds) {
    const SubgroupLattice& l = *f.lattice;
    const auto orbits = arrow_orbits(l);
    const std::size_t n = orbits.size();
    ConjectureReport rep;
    rep.p = f.p;
    rep.seed = seed;
    rep.orbit_count = n;

    auto& samples = rep.samples;
    const auto add = [&](std::string kind, std::vector<std::size_t> chosen) {
        ConjectureSample s;
        s.kind = std::move(kind);
        s.orbits = std::move(chosen);
        samples.push_back(std::move(s));
    };
    add("reflexive", {});
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    add("full", all);
    for (std::size_t i = 0; i < n; ++i) add("single", {i});
    if (pair_seeds)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) add("pair", {i, j});
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < random_samples && n > 0; ++s) {
        const std::size_t want = std::min<std::size_t>(1 + rng() % 4, n);
        std::set<std::size_t> chosen;
        while (chosen.size() < want) chosen.insert(static_cast<std::size_t>(rng() % n));
        add("random", {chosen.begin(), chosen.end()});
    }

    parallel_for(samples.size(), [&](std::size_t i) {
        ConjectureSample& s = samples[i];
        for (std::size_t o : s.orbits) s.seed.push_back(orbits[o].front());
        const Relation rg = g_closure(l, s.seed);
        s.arrow_count = rg.arrow_count();
        const SplitTransferSystem t = decompose(f, rg);
        const SplitDiagnosis d = is_split_transfer_system(f, t);
        s.valid = d.ok;
        if (!d.ok) {
            s.failure = d.condition + ": " + d.detail;
            return;
        }
        const Relation back = lift_split(f, t);
        s.round_trip = back == rg;
        if (!s.round_trip)
            for (std::size_t k = 0; k < l.size() && !s.disagreement; ++k) {
                const Bits diff = (back.targets(k) - rg.targets(k)) | (rg.targets(k) - back.targets(k));
                if (diff.any()) s.disagreement = Arrow{k, diff.find_first()};
            }
        s.decompose_stable = decompose(f, back) == t;
    });
    for (const auto& s : samples) (s.pass() ? rep.passed : rep.failed) += 1;
    return rep;
}

} // namespace normlift
