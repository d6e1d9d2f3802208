#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normlift/lattice.hpp"
#include "normlift/lifting.hpp"
#include "normlift/lossless.hpp"
#include "normlift/poset.hpp"
#include "normlift/sl2split.hpp"
#include "normlift/transfer.hpp"

namespace normlift {

// JSON documents are returned as strings, pretty-printed with two-space indent.
// Parsers throw ParseError on malformed input.

std::string lattice_to_json(const SubgroupLattice& l);
/// Rebuilds the lattice from the group spec and checks it against the document.
SubgroupLattice lattice_from_json(std::string_view text, const Limits& limits = default_limits());

std::string classes_to_json(const SubgroupLattice& l, const ClassPoset& cp);

/// `{"size": n, "leq": [[i, j], ...], "labels": [...]}` with strict pairs.
std::string poset_to_json(const FinitePoset& p);
/// Accepts any generating set of pairs; the order is their reflexive-transitive closure.
FinitePoset poset_from_json(std::string_view text);
FinitePoset load_poset(const std::string& path);

enum class Carrier { subgroups, poset };

/// `{"carrier": ..., "group": spec, "size": n, "arrows": [[i, j], ...]}`; `group` only for subgroups.
std::string relation_to_json(const Relation& r, Carrier carrier, const std::string& group = {});

struct ParsedRelation {
    Carrier carrier;
    std::optional<std::string> group;
    Relation relation;
};

ParsedRelation relation_from_json(std::string_view text);
/// Arrows `[[i, j], ...]` or a transfer-system document.
std::vector<Arrow> load_arrows(const std::string& path);

std::string lift_report_to_json(const LiftReport& rep, const std::string& group);
std::string lossless_to_json(const SubgroupLattice& l, const LosslessVerdict& v, std::optional<bool> universally,
                             const CriteriaReport& criteria);
std::string conjecture_to_json(const ConjectureReport& rep);

/// Hasse diagram in gray with the arrows of `r` (if any) in red.
std::string poset_to_dot(const FinitePoset& p, const Relation* r = nullptr);
/// Hasse diagram of Sub(G); conjugate subgroups share a fill color; arrows of `r` in red.
std::string lattice_to_dot(const SubgroupLattice& l, const Relation* r = nullptr);

std::string read_file(const std::string& path);

} // namespace normlift
