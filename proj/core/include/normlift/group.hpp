#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "normlift/bits.hpp"

namespace normlift {

/// Index of a group element. Index 0 is always the identity.
using Element = std::uint32_t;

/// Size bounds shared by the lattice-level algorithms.
struct Limits {
    std::size_t max_group_order = 5000;
    std::size_t max_isomorphism_order = 360;
    std::size_t max_subgroups = 20000;
};

/// Defaults, with `NORMLIFT_MAX_GROUP_ORDER` overriding the group-order bound.
Limits default_limits();

class GroupSpec;

namespace family {

struct Trivial {};
struct Cyclic {
    unsigned n;
};
/// Order 2n, n > 2.
struct Dihedral {
    unsigned n;
};
/// Order 4n: <a, x | a^{2n} = 1, x^2 = a^n, x^{-1} a x = a^{-1}>.
struct Dicyclic {
    unsigned n;
};
/// Order 2^n.
struct Semidihedral {
    unsigned n;
};
/// Order 2^n.
struct ModularMaximalCyclic {
    unsigned n;
};
struct Quaternion8 {};
struct Symmetric {
    unsigned n;
};
struct Alternating {
    unsigned n;
};
struct SL2 {
    unsigned p;
};
struct AGL1 {
    unsigned p;
};
struct Product {
    std::shared_ptr<const GroupSpec> left;
    std::shared_ptr<const GroupSpec> right;
};
/// Z/n x| C_m, the generator of C_m acting by multiplication by k.
struct UnitSemidirect {
    unsigned n;
    unsigned k;
    unsigned m;
};
/// (Z/p)^d x| C_m, the generator of C_m acting by the matrix `a` (row-major, d x d).
struct VecSemidirect {
    unsigned p;
    unsigned d;
    unsigned m;
    std::vector<std::vector<unsigned>> a;
};
/// Permutations of {0, ..., degree-1}; `images[i]` is the image of point i.
struct PermGens {
    unsigned degree;
    std::vector<std::vector<unsigned>> generators;
    /// File the generators were read from, if any; only used for display.
    std::string source;
};

} // namespace family

/// Constructor descriptor for a small finite group.
class GroupSpec {
  public:
    using Variant = std::variant<family::Trivial, family::Cyclic, family::Dihedral, family::Dicyclic,
                                 family::Semidihedral, family::ModularMaximalCyclic, family::Quaternion8,
                                 family::Symmetric, family::Alternating, family::SL2, family::AGL1, family::Product,
                                 family::UnitSemidirect, family::VecSemidirect, family::PermGens>;

    GroupSpec() : value_{family::Trivial{}} {}
    template <typename T>
        requires std::is_constructible_v<Variant, T>
    GroupSpec(T v) : value_{std::move(v)} {} // NOLINT(google-explicit-constructor)

    [[nodiscard]] const Variant& value() const { return value_; }

    /// Text form accepted by `parse`, e.g. `D9`, `prod(C2,A4)`, `sd(9,8,2)`.
    [[nodiscard]] std::string to_string() const;

    /// Parses the CLI grammar. `perm(file.json)` reads the file relative to the working directory.
    static GroupSpec parse(std::string_view text);

    static GroupSpec product(GroupSpec a, GroupSpec b);

  private:
    Variant value_;
};

/// Reads `{"degree": n, "generators": [[...], ...]}`.
family::PermGens load_perm_gens(const std::string& path);
family::PermGens perm_gens_from_json(std::string_view json_text, std::string source = {});
std::string perm_gens_to_json(const family::PermGens& gens);

/// A finite group given by its full multiplication table.
///
/// Values are immutable after construction and may be shared across threads.
class Group {
  public:
    static constexpr Element identity = 0;

    /// Validates the table (closure, identity at index 0, inverses, associativity)
    /// and precomputes inverses, element orders and a small generating set.
    static Group from_table(GroupSpec spec, std::size_t order, std::vector<std::uint16_t> table,
                            std::vector<std::string> labels = {});

    [[nodiscard]] std::size_t order() const { return order_; }
    [[nodiscard]] Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    [[nodiscard]] Element inv(Element a) const { return inverse_[a]; }
    /// g x g^{-1}
    [[nodiscard]] Element conj(Element g, Element x) const { return mul(mul(g, x), inverse_[g]); }
    [[nodiscard]] std::size_t element_order(Element a) const { return element_order_[a]; }
    [[nodiscard]] const std::vector<std::size_t>& element_orders() const { return element_order_; }

    /// A small generating set, chosen greedily by decreasing element order.
    [[nodiscard]] const std::vector<Element>& generators() const { return generators_; }

    [[nodiscard]] const GroupSpec& spec() const { return spec_; }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] std::string label(Element a) const;

    [[nodiscard]] bool is_abelian() const;

    [[nodiscard]] Bits all_elements() const;
    [[nodiscard]] Bits trivial_subgroup() const;
    [[nodiscard]] Bits make_set(std::span<const Element> elems) const;

  private:
    Group() = default;

    GroupSpec spec_;
    std::size_t order_ = 0;
    std::vector<std::uint16_t> table_;
    std::vector<Element> inverse_;
    std::vector<std::size_t> element_order_;
    std::vector<Element> generators_;
    std::vector<std::string> labels_;
};

Group build_group(const GroupSpec& spec, const Limits& limits = default_limits());

/// Smallest subgroup containing `gens`.
Bits generated_subgroup(const Group& g, std::span<const Element> gens);
Bits generated_subgroup(const Group& g, const Bits& gens);

/// { g s g^{-1} : s in s }
Bits conjugate_set(const Group& g, const Bits& s, Element by);

[[nodiscard]] bool is_subgroup(const Group& g, const Bits& s);

/// Throw NotASubgroup unless `s` is a subgroup.
void require_subgroup(const Group& g, const Bits& s);

Bits normalizer(const Group& g, const Bits& s);
Bits centralizer(const Group& g, const Bits& s);
Bits center(const Group& g);
Bits derived_subgroup(const Group& g);
Bits derived_subgroup_of(const Group& g, const Bits& h);
/// Smallest subgroup of `h` containing `k` and closed under conjugation by `h`.
Bits normal_closure(const Group& g, const Bits& k, const Bits& h);
[[nodiscard]] bool is_normal_in(const Group& g, const Bits& k, const Bits& h);
[[nodiscard]] bool is_solvable(const Group& g);

/// Elements of a subgroup given a compact generating set, greedy by element order.
std::vector<Element> subgroup_generators(const Group& g, const Bits& s);

/// A subgroup materialized as a group in its own right.
struct EmbeddedGroup {
    Group group;
    /// Element index in the parent for each element of `group`.
    std::vector<Element> to_parent;
};

EmbeddedGroup subgroup_as_group(const Group& g, const Bits& s);

/// G/N with coset multiplication.
struct QuotientGroup {
    Group group;
    /// Coset index of every parent element.
    std::vector<Element> coset_of;
};

QuotientGroup quotient_group(const Group& g, const Bits& normal);

/// Generator-image backtracking pruned by element orders.
/// Throws TooLarge if either order exceeds `limits.max_isomorphism_order`.
[[nodiscard]] bool is_isomorphic(const Group& a, const Group& b, const Limits& limits = default_limits());

/// Sorted multiset of element orders.
std::vector<std::size_t> order_profile(const Group& g);
std::vector<std::size_t> order_profile(const Group& g, const Bits& s);

} // namespace normlift
