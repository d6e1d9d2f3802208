#include "normlift/lossless.hpp"

#include <numeric>

#include "normlift/error.hpp"

namespace normlift {

namespace {

bool is_prime(std::size_t n) {
    if (n < 2) return false;
    for (std::size_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Orbit of subgroup k under the subgroup generated by `gens`.
Bits orbit_under(const SubgroupLattice& l, std::size_t k, const std::vector<Element>& gens) {
    Bits seen(l.size());
    std::vector<std::size_t> list{k};
    seen.set(k);
    for (std::size_t q = 0; q < list.size(); ++q)
        for (Element s : gens) {
            const std::size_t j = l.act(s, list[q]);
            if (seen.insert(j)) list.push_back(j);
        }
    return seen;
}

} // namespace

LosslessVerdict is_lossless(const SubgroupLattice& l) {
    const Group& g = l.group();
    for (std::size_t h = 0; h < l.size(); ++h) {
        const auto ngens = subgroup_generators(g, l.subgroup(l.normalizer_of(h)));
        Bits done(l.size());
        for (std::size_t k = l.down(h).find_first(); k < l.size(); k = l.down(h).find_next(k + 1)) {
            if (done.test(k)) continue;
            const Bits orbit = orbit_under(l, k, ngens);
            done |= orbit;
            bool split = false;
            for (std::size_t m : l.class_members(l.class_of(k)))
                if (l.leq(m, h) && !orbit.test(m)) split = true;
            if (!split) continue;
            // Least g carrying K into H outside its N_G(H)-orbit.
            for (Element x = 0; x < g.order(); ++x) {
                const std::size_t gk = l.act(x, k);
                if (l.leq(gk, h) && !orbit.test(gk)) return {false, LosslessWitness{h, k, x, gk}};
            }
        }
    }
    return {};
}

bool validate_witness(const SubgroupLattice& l, const LosslessWitness& w) {
    const Group& g = l.group();
    if (w.h >= l.size() || w.k >= l.size() || w.g >= g.order()) return false;
    const Bits& hs = l.subgroup(w.h);
    const Bits& ks = l.subgroup(w.k);
    const Bits gk = conjugate_set(g, ks, w.g);
    if (!ks.is_subset_of(hs) || !gk.is_subset_of(hs) || gk != l.subgroup(w.gk)) return false;
    const Bits norm = normalizer(g, hs);
    for (Element x = 0; x < g.order(); ++x)
        if (norm.test(x) && conjugate_set(g, ks, x) == gk) return false;
    return true;
}

bool is_universally_lossless(const SubgroupLattice& l, const Limits& limits) {
    const Group& g = l.group();
    for (std::size_t a = 0; a < l.class_count(); ++a)
        for (std::size_t b = a + 1; b < l.class_count(); ++b) {
            const std::size_t ra = l.class_rep(a), rb = l.class_rep(b);
            if (l.order_of(ra) != l.order_of(rb)) continue;
            if (order_profile(g, l.subgroup(ra)) != order_profile(g, l.subgroup(rb))) continue;
            if (l.is_cyclic(ra) && l.is_cyclic(rb)) return false;
            const auto ga = subgroup_as_group(g, l.subgroup(ra));
            const auto gb = subgroup_as_group(g, l.subgroup(rb));
            if (is_isomorphic(ga.group, gb.group, limits)) return false;
        }
    return true;
}

bool is_pronormal(const SubgroupLattice& l, std::size_t k) {
    const Group& g = l.group();
    for (std::size_t k2 : l.class_members(l.class_of(k))) {
        const std::size_t j = l.join(k, k2);
        const auto gens = subgroup_generators(g, l.subgroup(j));
        if (!orbit_under(l, k, gens).test(k2)) return false;
    }
    return true;
}

bool is_subnormal(const SubgroupLattice& l, std::size_t k) {
    const Group& g = l.group();
    Bits current = g.all_elements();
    const Bits& ks = l.subgroup(k);
    while (true) {
        Bits next = normal_closure(g, ks, current);
        if (next == ks) return true;
        if (next == current) return false;
        current = std::move(next);
    }
}

bool is_t_group(const SubgroupLattice& l) {
    for (std::size_t k = 0; k < l.size(); ++k)
        if (!l.is_normal(k) && is_subnormal(l, k)) return false;
    return true;
}

bool is_t_group_two_step(const SubgroupLattice& l) {
    const Group& g = l.group();
    for (std::size_t h = 0; h < l.size(); ++h) {
        if (!l.is_normal(h)) continue;
        bool ok = true;
        l.down(h).for_each([&](std::size_t k) {
            if (ok && !l.is_normal(k) && is_normal_in(g, l.subgroup(k), l.subgroup(h))) ok = false;
        });
        if (!ok) return false;
    }
    return true;
}

CriteriaReport lossless_criteria(const SubgroupLattice& l) {
    const Group& g = l.group();
    const std::size_t n = g.order();
    CriteriaReport r;
    r.solvable_t_group = is_solvable(g) && is_t_group(l);
    for (std::size_t i = 0; i < l.size(); ++i)
        if (l.is_normal(i) && l.is_cyclic(i) && is_prime(n / l.order_of(i))) r.cyclic_normal_prime_index = true;
    r.derived_prime_order = is_prime(derived_subgroup(g).count());
    for (std::size_t v = 0; v < l.size() && !r.elementary_p2_by_cyclic; ++v) {
        const std::size_t ov = l.order_of(v);
        const auto ps = prime_factors(ov);
        if (ps.size() != 1 || ov != ps[0] * ps[0] || l.is_cyclic(v) || !l.is_normal(v)) continue;
        const std::size_t p = ps[0];
        const std::size_t m = n / ov;
        if (std::gcd(m, p) != 1) continue;
        for (std::size_t t = 0; t < l.size(); ++t)
            if (l.order_of(t) == m && l.is_cyclic(t) && l.meet(v, t) == l.bottom()) {
                r.elementary_p2_by_cyclic = true;
                break;
            }
    }
    return r;
}

} // namespace normlift
