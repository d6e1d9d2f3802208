#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "normlift/bits.hpp"
#include "normlift/lattice.hpp"
#include "normlift/poset.hpp"

namespace normlift {

using Arrow = std::pair<std::size_t, std::size_t>;

/// A reflexive relation on {0, ..., size-1}; row i holds every j with i -> j.
class Relation {
  public:
    Relation() = default;
    /// The diagonal relation.
    explicit Relation(std::size_t size);

    [[nodiscard]] std::size_t size() const { return out_.size(); }
    [[nodiscard]] bool has(std::size_t i, std::size_t j) const { return out_[i].test(j); }
    /// Sets i -> j and reports whether it was new.
    bool add(std::size_t i, std::size_t j) { return out_[i].insert(j); }
    [[nodiscard]] const Bits& targets(std::size_t i) const { return out_[i]; }

    /// Non-reflexive arrows ordered by (source, target).
    [[nodiscard]] std::vector<Arrow> arrows() const;
    /// Number of non-reflexive arrows.
    [[nodiscard]] std::size_t arrow_count() const;

    [[nodiscard]] bool contains(const Relation& other) const;
    /// Lexicographic order of the flattened row-major bit matrix.
    [[nodiscard]] bool canonical_less(const Relation& other) const;
    [[nodiscard]] std::size_t hash() const;

    friend bool operator==(const Relation& a, const Relation& b) = default;

  private:
    std::vector<Bits> out_;
};

struct RelationHash {
    std::size_t operator()(const Relation& r) const { return r.hash(); }
};

/// Relation with the given non-reflexive arrows; throws InvalidArrow on out-of-range indices.
Relation relation_from_arrows(std::size_t size, std::span<const Arrow> arrows);

/// The full order relation of a carrier.
Relation full_relation(const FinitePoset& p);
Relation full_relation(const SubgroupLattice& l);

/// Outcome of a validator; on failure names the axiom and the offending arrows.
struct Diagnosis {
    bool ok = true;
    std::string axiom;
    Arrow arrow{0, 0};
    /// The arrow that should have been present.
    Arrow missing{0, 0};
    explicit operator bool() const { return ok; }
};

/// Reflexive, refines inclusion, transitive, closed under conjugation and restriction.
Diagnosis check_g_transfer_system(const SubgroupLattice& l, const Relation& r);
[[nodiscard]] inline bool is_g_transfer_system(const SubgroupLattice& l, const Relation& r) {
    return check_g_transfer_system(l, r).ok;
}

/// Reflexive, refines the order, transitive, and x -> y, z <= y imply w -> z
/// for every maximal lower bound w of x and z.
Diagnosis check_cat_transfer_system(const FinitePoset& p, const Relation& r);
[[nodiscard]] inline bool is_cat_transfer_system(const FinitePoset& p, const Relation& r) {
    return check_cat_transfer_system(p, r).ok;
}

/// Least G-transfer system containing `seed`. Throws InvalidArrow for a non-inclusion.
Relation g_closure(const SubgroupLattice& l, std::span<const Arrow> seed);
Relation g_closure(const SubgroupLattice& l, const Relation& seed);

/// Least categorical transfer system containing `seed`. Throws InvalidArrow.
Relation cat_closure(const FinitePoset& p, std::span<const Arrow> seed);
Relation cat_closure(const FinitePoset& p, const Relation& seed);

/// Conjugation orbits of proper inclusions K < H, each sorted, ordered by least member.
std::vector<std::vector<Arrow>> arrow_orbits(const SubgroupLattice& l);

enum class EnumerationStrategy {
    /// Closed sets in lectic order, one closure per candidate.
    next_closure,
    /// Closure of every subset of generators; bounded to 24 generators.
    subset_closure,
};

/// Every categorical transfer system on `p`, in canonical order.
std::vector<Relation> enumerate_cat_transfer_systems(const FinitePoset& p,
                                                     EnumerationStrategy strategy = EnumerationStrategy::next_closure);

/// Every G-transfer system on `l`, in canonical order.
std::vector<Relation> enumerate_g_transfer_systems(const SubgroupLattice& l,
                                                   EnumerationStrategy strategy = EnumerationStrategy::next_closure);

/// Maximum generator count accepted by the subset-closure strategy.
inline constexpr std::size_t subset_closure_bound = 24;

} // namespace normlift
