#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "normlift/lattice.hpp"
#include "normlift/poset.hpp"
#include "normlift/transfer.hpp"

namespace normlift {

/// Frobenius decomposition G = N x| T with N and T cyclic.
struct McfStructure {
    /// Subgroup index of the kernel N.
    std::size_t kernel;
    /// Subgroup index of a complement T.
    std::size_t complement;
    std::size_t n;
    std::size_t t;
};

/// Scans cyclic normal subgroups for a cyclic complement acting without fixed points.
std::optional<McfStructure> mcf_structure(const SubgroupLattice& l);

/// K ∩ N.
[[nodiscard]] inline std::size_t base(const SubgroupLattice& l, const McfStructure& st, std::size_t k) {
    return l.meet(k, st.kernel);
}

/// Sub(G)/G laid out on the divisor grid D_n x D_t via [K] -> (|N_K|, [K : N_K]).
struct GridIso {
    FinitePoset grid;
    /// Class index -> (|N_K|, [K : N_K]).
    std::vector<std::pair<std::size_t, std::size_t>> coords;
    /// Class index -> element of `grid`.
    std::vector<std::size_t> to_grid;
};

/// Throws NotMcf when the map is not an order isomorphism.
GridIso grid_iso(const SubgroupLattice& l, const ClassPoset& cp, const McfStructure& st);

/// Which class the base arrow must reach.
enum class McfConclusion {
    /// [N_K] -> [H]
    to_target,
    /// [N_K] -> [K]
    to_source,
};

struct McfViolation {
    /// The arrow [K] -> [H] with N_K != N_H.
    Arrow arrow;
    /// The required arrow that is absent.
    Arrow missing;
};

/// First arrow [K] -> [H] (in arrow order) with N_K != N_H whose base arrow is missing.
std::optional<McfViolation> mcf_violation(const SubgroupLattice& l, const ClassPoset& cp, const McfStructure& st,
                                          const Relation& rc, McfConclusion form = McfConclusion::to_target);

[[nodiscard]] inline bool mcf_liftable(const SubgroupLattice& l, const ClassPoset& cp, const McfStructure& st,
                                       const Relation& rc, McfConclusion form = McfConclusion::to_target) {
    return !mcf_violation(l, cp, st, rc, form).has_value();
}

} // namespace normlift
