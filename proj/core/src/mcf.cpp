#include "normlift/mcf.hpp"

#include <algorithm>

#include "normlift/error.hpp"

namespace normlift {

namespace {

bool fixed_point_free(const Group& g, const Bits& n, const Bits& t) {
    bool ok = true;
    t.for_each([&](std::size_t x) {
        if (!ok || x == Group::identity) return;
        n.for_each([&](std::size_t y) {
            if (ok && y != Group::identity && g.conj(static_cast<Element>(x), static_cast<Element>(y)) == y) ok = false;
        });
    });
    return ok;
}

} // namespace

std::optional<McfStructure> mcf_structure(const SubgroupLattice& l) {
    const Group& g = l.group();
    const std::size_t order = g.order();
    for (std::size_t n = 1; n < l.top(); ++n) {
        if (!l.is_normal(n) || !l.is_cyclic(n)) continue;
        const std::size_t t_order = order / l.order_of(n);
        for (std::size_t t = 1; t < l.top(); ++t) {
            if (l.order_of(t) != t_order || !l.is_cyclic(t) || l.meet(n, t) != l.bottom()) continue;
            if (fixed_point_free(g, l.subgroup(n), l.subgroup(t)))
                return McfStructure{n, t, l.order_of(n), t_order};
        }
    }
    return std::nullopt;
}

GridIso grid_iso(const SubgroupLattice& l, const ClassPoset& cp, const McfStructure& st) {
    GridIso out;
    const FinitePoset dn = divisor_lattice(st.n);
    const FinitePoset dt = divisor_lattice(st.t);
    out.grid = product(dn, dt);
    const auto divn = divisors(st.n);
    const auto divt = divisors(st.t);
    const std::size_t c = cp.poset.size();
    std::vector<bool> hit(out.grid.size(), false);
    for (std::size_t cls = 0; cls < c; ++cls) {
        const std::size_t k = cp.classes[cls].rep;
        const std::size_t nk = l.order_of(base(l, st, k));
        const std::size_t tk = l.order_of(k) / nk;
        const auto in = std::find(divn.begin(), divn.end(), nk);
        const auto it = std::find(divt.begin(), divt.end(), tk);
        if (in == divn.end() || it == divt.end()) throw NotMcf("class outside the divisor grid");
        const auto idx = static_cast<std::size_t>(in - divn.begin()) * divt.size() +
                         static_cast<std::size_t>(it - divt.begin());
        if (hit[idx]) throw NotMcf("two classes share a grid point");
        hit[idx] = true;
        out.coords.emplace_back(nk, tk);
        out.to_grid.push_back(idx);
    }
    if (c != out.grid.size()) throw NotMcf("class count differs from the divisor grid size");
    for (std::size_t a = 0; a < c; ++a)
        for (std::size_t b = 0; b < c; ++b)
            if (cp.poset.leq(a, b) != out.grid.leq(out.to_grid[a], out.to_grid[b]))
                throw NotMcf("class order differs from the divisor grid order");
    return out;
}

std::optional<McfViolation> mcf_violation(const SubgroupLattice& l, const ClassPoset& cp, const McfStructure& st,
                                          const Relation& rc, McfConclusion form) {
    if (rc.size() != cp.poset.size()) throw CarrierMismatch("relation size differs from Sub(G)/G");
    for (auto [ck, ch] : rc.arrows()) {
        const std::size_t nk = base(l, st, cp.classes[ck].rep);
        const std::size_t nh = base(l, st, cp.classes[ch].rep);
        // Bases are subgroups of the cyclic kernel, so equal orders mean equal bases.
        if (l.order_of(nk) == l.order_of(nh)) continue;
        const Arrow need{cp.pi[nk], form == McfConclusion::to_target ? ch : ck};
        if (!rc.has(need.first, need.second)) return McfViolation{{ck, ch}, need};
    }
    return std::nullopt;
}

} // namespace normlift
