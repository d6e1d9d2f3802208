#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "normlift/group.hpp"
#include "normlift/lattice.hpp"
#include "normlift/poset.hpp"
#include "normlift/transfer.hpp"

namespace normlift {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// A named invariant evaluated while building a frame.
struct FrameCheck {
    std::string name;
    bool ok;
};

/// The posets D_G, U_G, I_G of SL2(p), p = ±3 mod 8, and the maps between them.
struct Sl2Frame {
    unsigned p = 0;
    /// +1 or -1 with p + eps = 4 mod 8.
    int eps = 0;
    std::shared_ptr<const SubgroupLattice> lattice;
    ClassPoset cp;
    /// Normalizer of a torus of order p + eps.
    std::size_t h_eps = 0;
    /// Z(G).
    std::size_t center = 0;

    /// Conjugacy classes of maximal subgroups, with their universal losslessness.
    std::vector<std::size_t> maximal_classes;
    std::vector<bool> maximal_ul;
    /// Subgroups contained in some universally lossless maximal subgroup.
    Bits in_ul;

    /// Sub(H_eps)/H_eps plus a top vertex [G]; node d_top is [G].
    FinitePoset d_poset;
    /// D node -> least subgroup index in the node (top: the whole group).
    std::vector<std::size_t> d_rep;
    /// Subgroup index -> D node, or npos outside Sub(H_eps) ∪ {G}.
    std::vector<std::size_t> d_of_subgroup;
    std::size_t d_top = 0;
    /// D node -> class in `cp`.
    std::vector<std::size_t> psi_d;

    FinitePoset u_poset;
    /// U node -> class in `cp`.
    std::vector<std::size_t> psi_u;
    /// Class -> U node, or npos.
    std::vector<std::size_t> u_of_class;

    FinitePoset i_poset;
    /// I node -> D node.
    std::vector<std::size_t> phi_d;
    /// I node -> U node.
    std::vector<std::size_t> phi_u;

    /// D nodes of cyclic subgroups of order 4.
    std::vector<std::size_t> c4_nodes;

    /// Subgroup index -> least g with g K g^{-1} <= H_eps, or npos.
    std::vector<std::size_t> into_h_eps;

    std::vector<FrameCheck> checks;

    [[nodiscard]] bool checks_ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

/// Throws BadPrime unless p is prime with p = ±3 mod 8, TooLarge past the group limits.
Sl2Frame build_frame(unsigned p, const Limits& limits = default_limits());

struct SplitTransferSystem {
    Relation r_d;
    Relation r_i;
    Relation r_u;

    friend bool operator==(const SplitTransferSystem&, const SplitTransferSystem&) = default;
};

/// R_D from arrows inside Sub(H_eps) ∪ {G}, R_I its restriction to I_G, R_U from arrows between U_G classes.
SplitTransferSystem decompose(const Sl2Frame& f, const Relation& rg);

struct SplitDiagnosis {
    bool ok = true;
    /// "R_D", "R_I", "R_U", "C4 saturation", "D compatibility" or "U compatibility".
    std::string condition;
    std::string detail;
    explicit operator bool() const { return ok; }
};

SplitDiagnosis is_split_transfer_system(const Sl2Frame& f, const SplitTransferSystem& t);

/// Relation on Sub(G) read off the triple. Throws InvalidTriple for an invalid triple.
Relation lift_split(const Sl2Frame& f, const SplitTransferSystem& t);

struct ConjectureSample {
    /// "reflexive", "full", "single", "pair" or "random".
    std::string kind;
    /// Arrow orbits whose representatives seed the closure.
    std::vector<std::size_t> orbits;
    std::vector<Arrow> seed;
    std::size_t arrow_count = 0;
    bool valid = false;
    std::string failure;
    bool round_trip = false;
    /// Least pair (K, H) on which lift_split(decompose(R)) and R differ.
    std::optional<Arrow> disagreement;
    /// decompose(lift_split(T)) == T.
    bool decompose_stable = false;

    [[nodiscard]] bool pass() const { return valid && round_trip && decompose_stable; }
};

struct ConjectureReport {
    unsigned p = 0;
    std::uint64_t seed = 0;
    std::size_t orbit_count = 0;
    std::vector<ConjectureSample> samples;
    std::size_t passed = 0;
    std::size_t failed = 0;
};

/// Runs the reflexive system, the full system, every single-orbit closure,
/// optionally every two-orbit closure, and `random_samples` closures of 1 to 4
/// orbits drawn from mt19937_64(seed): count = 1 + r % 4, then orbit = r % n
/// redrawn on repeats.
ConjectureReport conjecture_check(const Sl2Frame& f, std::size_t random_samples, std::uint64_t seed,
                                  bool pair_seeds = false);

} // namespace normlift
