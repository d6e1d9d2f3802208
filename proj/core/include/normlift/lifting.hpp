#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "normlift/lattice.hpp"
#include "normlift/transfer.hpp"

namespace normlift {

/// K -> H for every K <= H with [K] -> [H] in `rc`.
Relation pi_preimage(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rc);

/// [K] -> [H] whenever some representative pair K -> H lies in `rg`.
Relation pi_pushforward(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rg);

/// The G-transfer system generated by pi_preimage(rc).
Relation pi_star(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rc);

/// rc == pi_pushforward(pi_star(rc)). Meaningful for lossless groups only.
[[nodiscard]] bool is_liftable(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rc);

/// Least class arrow on which rc and pi_pushforward(pi_star(rc)) differ.
std::optional<Arrow> liftability_witness(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rc);

/// For every [K] -> [H], every representative H and all K, K' <= H in class [K]:
/// [K ∩ K'] -> [H].
[[nodiscard]] bool is_liftable_via_meets(const SubgroupLattice& l, const ClassPoset& cp, const Relation& rc);

struct LiftReport {
    std::size_t poset_size = 0;
    std::size_t total = 0;
    std::size_t liftable = 0;
    /// Every categorical transfer system on Sub(G)/G, canonical order.
    std::vector<Relation> systems;
    /// Parallel to `systems`.
    std::vector<bool> verdicts;
    /// (system index, failing class arrow) for each non-liftable system.
    std::vector<std::pair<std::size_t, Arrow>> witnesses;
};

LiftReport lift_report(const SubgroupLattice& l, const ClassPoset& cp);

} // namespace normlift
