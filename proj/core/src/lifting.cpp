#include "normlift/lifting.hpp"

#include "normlift/error.hpp"
#include "normlift/parallel.hpp"

namespace normlift {

namespace {

void check_class_carrier(const ClassPoset& cp, const Relation& rc) {
    if (rc.size() != cp.poset.size()) throw CarrierMismatch("relation size differs from Sub(G)/G");
}

void check_subgroup_carrier(const SubgroupLattice& l, const Relation& rg) {
    if (rg.size() != l.size()) throw CarrierMismatch("relation size differs from Sub(G)");
}

} // namespace

Relation pi_preimage(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rc) {
    check_class_carrier(cp, rc);
    Relation r(l.size());
    for (std::size_t h = 0; h < l.size(); ++h)
        l.down(h).for_each([&](std::size_t k) {
            if (rc.has(cp.pi[k], cp.pi[h])) r.add(k, h);
        });
    return r;
}

Relation pi_pushforward(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rg) {
    check_subgroup_carrier(l, rg);
    Relation r(cp.poset.size());
    for (auto [k, h] : rg.arrows()) r.add(cp.pi[k], cp.pi[h]);
    return r;
}

Relation pi_star(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rc) {
    return g_closure(l, pi_preimage(l, cp, rc));
}

std::optional<Arrow> liftability_witness(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rc) {
    const Relation back = pi_pushforward(l, cp, pi_star(l, cp, rc));
    for (std::size_t i = 0; i < rc.size(); ++i) {
        if (back.targets(i) == rc.targets(i)) continue;
        const std::size_t j = ((back.targets(i) - rc.targets(i)) | (rc.targets(i) - back.targets(i))).find_first();
        return Arrow{i, j};
    }
    return std::nullopt;
}

bool is_liftable(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rc) {
    return !liftability_witness(l, cp, rc).has_value();
}

bool is_liftable_via_meets(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rc) {
    check_class_carrier(cp, rc);
    for (auto [ck, ch] : rc.arrows()) {
        for (std::size_t h : l.class_members(ch)) {
            std::vector<std::size_t> inside;
            for (std::size_t k : l.class_members(ck))
                if (l.leq(k, h)) inside.push_back(k);
            for (std::size_t a : inside)
                for (std::size_t b : inside)
                    if (!rc.has(cp.pi[l.meet(a, b)], ch)) return false;
        }
    }
    return true;
}

LiftReport lift_report(const SubgroupLattice& l, const ClassPoset& cp) {
    LiftReport rep;
    rep.poset_size = cp.poset.size();
    rep.systems = enumerate_cat_transfer_systems(cp.poset);
    rep.total = rep.systems.size();
    std::vector<std::optional<Arrow>> w(rep.total);
    parallel_for(rep.total, [&](std::size_t i) { w[i] = liftability_witness(l, cp, rep.systems[i]); });
    rep.verdicts.resize(rep.total);
    for (std::size_t i = 0; i < rep.total; ++i) {
        rep.verdicts[i] = !w[i].has_value();
        if (w[i]) rep.witnesses.emplace_back(i, *w[i]);
        else ++rep.liftable;
    }
    return rep;
}

} // namespace normlift
