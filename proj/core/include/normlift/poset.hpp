#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normlift/bits.hpp"

namespace normlift {

/// A finite partial order on {0, ..., size-1}.
///
/// Stored as up-sets and down-sets, both including the element itself.
class FinitePoset {
  public:
    FinitePoset() = default;

    /// Builds the reflexive-transitive closure of `pairs` (i <= j).
    /// Throws InvalidArrow when the closure is not antisymmetric.
    static FinitePoset from_pairs(std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                  std::vector<std::string> labels = {});

    /// Takes `down[j]` = {i : i <= j} verbatim and checks the partial-order axioms.
    static FinitePoset from_down_sets(std::vector<Bits> down, std::vector<std::string> labels = {});

    [[nodiscard]] std::size_t size() const { return down_.size(); }
    [[nodiscard]] bool leq(std::size_t i, std::size_t j) const { return down_[j].test(i); }
    [[nodiscard]] bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
    [[nodiscard]] const Bits& down(std::size_t i) const { return down_[i]; }
    [[nodiscard]] const Bits& up(std::size_t i) const { return up_[i]; }

    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] std::string label(std::size_t i) const;

    /// Maximal elements of down(x) ∩ down(y), ascending.
    [[nodiscard]] std::vector<std::size_t> maximal_lower_bounds(std::size_t x, std::size_t y) const;

    /// Covering pairs (i, j): i < j with nothing strictly between.
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const;

    /// All pairs i < j, ordered by (i, j).
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;

    [[nodiscard]] std::optional<std::size_t> bottom() const;
    [[nodiscard]] std::optional<std::size_t> top() const;

    /// The subposet on `keep` (ascending indices), relabelled 0..k-1.
    [[nodiscard]] FinitePoset induced(const std::vector<std::size_t>& keep) const;

    friend bool operator==(const FinitePoset& a, const FinitePoset& b) { return a.down_ == b.down_; }

  private:
    std::vector<Bits> down_;
    std::vector<Bits> up_;
    std::vector<std::string> labels_;
};

/// [n] = {0 < 1 < ... < n}
FinitePoset chain(std::size_t n);
/// Componentwise order; element (p, q) has index p * |Q| + q.
FinitePoset product(const FinitePoset& p, const FinitePoset& q);
/// Divisors of n ordered by divisibility, ascending numerically.
FinitePoset divisor_lattice(std::size_t n);
/// The divisors listed by divisor_lattice(n).
std::vector<std::size_t> divisors(std::size_t n);

/// Five-element lattice: a diamond with an extra element on top.
/// It does not arise as the subgroup lattice of any group.
FinitePoset diamond_with_tail();

/// Order isomorphism p -> q if one exists. Throws TooLarge above 64 elements.
std::optional<std::vector<std::size_t>> is_isomorphic_poset(const FinitePoset& p, const FinitePoset& q);

} // namespace normlift
