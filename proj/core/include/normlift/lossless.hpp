#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "normlift/lattice.hpp"

namespace normlift {

/// Subgroups K and g K g^{-1} of H that no element of N_G(H) conjugates into each other.
struct LosslessWitness {
    std::size_t h;
    std::size_t k;
    Element g;
    /// Index of g K g^{-1}.
    std::size_t gk;
};

struct LosslessVerdict {
    bool lossless = true;
    std::optional<LosslessWitness> witness;
};

/// Per subgroup H, the N_G(H)-orbits must cover each G-class inside H.
/// The witness is the lexicographically least (H, K, g).
LosslessVerdict is_lossless(const SubgroupLattice& l);

/// Re-checks a witness from scratch: K, gK <= H and no h in N_G(H) has hK = gK.
[[nodiscard]] bool validate_witness(const SubgroupLattice& l, const LosslessWitness& w);

/// Every two isomorphic subgroups are conjugate. Throws TooLarge when an
/// isomorphism test is needed beyond `limits.max_isomorphism_order`.
[[nodiscard]] bool is_universally_lossless(const SubgroupLattice& l, const Limits& limits = default_limits());

/// For all g, K and gK are conjugate in <K, gK>.
[[nodiscard]] bool is_pronormal(const SubgroupLattice& l, std::size_t k);

/// The chain H_0 = G, H_{i+1} = normal closure of K in H_i reaches K.
[[nodiscard]] bool is_subnormal(const SubgroupLattice& l, std::size_t k);

/// Every subnormal subgroup is normal.
[[nodiscard]] bool is_t_group(const SubgroupLattice& l);

/// K normal in H and H normal in G imply K normal in G.
[[nodiscard]] bool is_t_group_two_step(const SubgroupLattice& l);

struct CriteriaReport {
    bool solvable_t_group = false;
    bool cyclic_normal_prime_index = false;
    bool derived_prime_order = false;
    bool elementary_p2_by_cyclic = false;

    [[nodiscard]] bool any() const {
        return solvable_t_group || cyclic_normal_prime_index || derived_prime_order || elementary_p2_by_cyclic;
    }
};

/// Sufficient conditions for losslessness. `elementary_p2_by_cyclic` means
/// G = (C_p)^2 x| C_m with gcd(m, p) = 1.
CriteriaReport lossless_criteria(const SubgroupLattice& l);

} // namespace normlift
