#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "normlift/bits.hpp"
#include "normlift/group.hpp"
#include "normlift/poset.hpp"

namespace normlift {

/// All subgroups of a group, with containment, conjugation and classes.
///
/// Subgroups are indexed in canonical order: by order, then by the
/// membership bit-string (element 0 first, absent before present). Index 0
/// is the trivial subgroup and the last index is the whole group.
class SubgroupLattice {
  public:
    [[nodiscard]] const Group& group() const { return *group_; }
    [[nodiscard]] std::shared_ptr<const Group> group_ptr() const { return group_; }

    [[nodiscard]] std::size_t size() const { return subgroups_.size(); }
    [[nodiscard]] std::size_t bottom() const { return 0; }
    [[nodiscard]] std::size_t top() const { return subgroups_.size() - 1; }

    [[nodiscard]] const Bits& subgroup(std::size_t i) const { return subgroups_[i]; }
    [[nodiscard]] std::size_t order_of(std::size_t i) const { return orders_[i]; }
    [[nodiscard]] bool is_cyclic(std::size_t i) const { return cyclic_[i]; }

    [[nodiscard]] bool leq(std::size_t i, std::size_t j) const { return down_[j].test(i); }
    /// Indices of subgroups contained in subgroup i (including i).
    [[nodiscard]] const Bits& down(std::size_t i) const { return down_[i]; }
    /// Indices of subgroups containing subgroup i (including i).
    [[nodiscard]] const Bits& up(std::size_t i) const { return up_[i]; }

    /// Index of the intersection of subgroups i and j.
    [[nodiscard]] std::size_t meet(std::size_t i, std::size_t j) const {
        if (!meet_table_.empty()) return meet_table_[i * size() + j];
        return (down_[i] & down_[j]).find_last();
    }
    /// Index of the subgroup generated by subgroups i and j.
    [[nodiscard]] std::size_t join(std::size_t i, std::size_t j) const { return (up_[i] & up_[j]).find_first(); }

    /// Index of g H_i g^{-1}.
    [[nodiscard]] std::size_t act(Element g, std::size_t i) const { return act_[static_cast<std::size_t>(g) * size() + i]; }

    [[nodiscard]] std::size_t class_of(std::size_t i) const { return class_of_[i]; }
    [[nodiscard]] std::size_t class_count() const { return class_members_.size(); }
    /// Members of class c, ascending; the first is the representative.
    [[nodiscard]] const std::vector<std::size_t>& class_members(std::size_t c) const { return class_members_[c]; }
    [[nodiscard]] std::size_t class_rep(std::size_t c) const { return class_members_[c].front(); }

    [[nodiscard]] std::size_t normalizer_of(std::size_t i) const { return normalizer_of_[i]; }
    [[nodiscard]] bool is_normal(std::size_t i) const { return class_members_[class_of_[i]].size() == 1; }

    [[nodiscard]] std::optional<std::size_t> index_of(const Bits& elements) const;

  private:
    friend SubgroupLattice enumerate_subgroups(Group g, const Limits& limits);

    std::shared_ptr<const Group> group_;
    std::vector<Bits> subgroups_;
    std::vector<std::size_t> orders_;
    std::vector<bool> cyclic_;
    std::vector<Bits> down_;
    std::vector<Bits> up_;
    std::vector<std::uint16_t> meet_table_;
    std::vector<std::uint32_t> act_;
    std::vector<std::size_t> class_of_;
    std::vector<std::vector<std::size_t>> class_members_;
    std::vector<std::size_t> normalizer_of_;
    std::unordered_map<Bits, std::size_t, BitsHash> index_;
};

/// Cyclic subgroups first, then extension of each class representative by
/// each cyclic subgroup until no new subgroup appears.
/// Throws TooLarge when the group or the subgroup count exceeds `limits`.
SubgroupLattice enumerate_subgroups(Group g, const Limits& limits = default_limits());

struct ClassInfo {
    std::size_t rep;
    std::size_t size;
    std::size_t order;
};

/// Sub(G)/G: conjugacy classes ordered by representative index.
struct ClassPoset {
    FinitePoset poset;
    std::vector<ClassInfo> classes;
    /// Subgroup index -> class index.
    std::vector<std::size_t> pi;
};

ClassPoset quotient_poset(const SubgroupLattice& l);

/// Subgroups whose order only involves `primes` and whose index is coprime to them.
std::vector<std::size_t> hall_subgroups(const SubgroupLattice& l, const std::vector<std::size_t>& primes);

/// The interval [N, G] of Sub(G), with the conjugation action inherited from G.
struct IntervalPoset {
    FinitePoset poset;
    /// Lattice index of each poset element, ascending.
    std::vector<std::size_t> subgroups;
};

/// Throws NotNormal unless subgroup `n` is normal.
IntervalPoset interval_poset(const SubgroupLattice& l, std::size_t n);

/// Distinct prime divisors, ascending.
std::vector<std::size_t> prime_factors(std::size_t n);

} // namespace normlift
