#pragma once

// Independent reference computations used as test oracles. Nothing here
// calls the library's lattice, closure or enumeration code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "normlift/group.hpp"
#include "normlift/poset.hpp"

namespace oracle {

using Set = std::vector<bool>;

inline Set closure(const normlift::Group& g, std::vector<std::size_t> gens) {
    const std::size_t n = g.order();
    Set in(n, false);
    std::vector<std::size_t> list{0};
    in[0] = true;
    for (auto x : gens)
        if (!in[x]) {
            in[x] = true;
            list.push_back(x);
        }
    for (std::size_t i = 0; i < list.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            for (auto [a, b] : {std::pair{list[i], list[j]}, std::pair{list[j], list[i]}}) {
                const std::size_t c = g.mul(static_cast<normlift::Element>(a), static_cast<normlift::Element>(b));
                if (!in[c]) {
                    in[c] = true;
                    list.push_back(c);
                }
            }
    return in;
}

/// Every subset containing the identity and closed under multiplication; order <= 24.
inline std::set<Set> subset_filter(const normlift::Group& g) {
    const std::size_t n = g.order();
    std::set<Set> out;
    const std::uint32_t limit = 1u << (n - 1);
    std::vector<std::size_t> members;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        const std::uint32_t full = (mask << 1) | 1u;
        members.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (full >> i & 1u) members.push_back(i);
        bool closed = true;
        for (std::size_t a : members) {
            for (std::size_t b : members)
                if (!(full >> g.mul(static_cast<normlift::Element>(a), static_cast<normlift::Element>(b)) & 1u)) {
                    closed = false;
                    break;
                }
            if (!closed) break;
        }
        if (!closed) continue;
        Set s(n, false);
        for (std::size_t i : members) s[i] = true;
        out.insert(std::move(s));
    }
    return out;
}

/// Subgroups generated by at most two elements, then closed under pairwise joins.
inline std::set<Set> join_fixpoint(const normlift::Group& g) {
    const std::size_t n = g.order();
    std::set<Set> found;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) found.insert(closure(g, {a, b}));
    bool grew = true;
    while (grew) {
        grew = false;
        const std::vector<Set> cur(found.begin(), found.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                std::vector<std::size_t> gens;
                for (std::size_t x = 0; x < n; ++x)
                    if (cur[i][x] || cur[j][x]) gens.push_back(x);
                if (found.insert(closure(g, gens)).second) grew = true;
            }
    }
    return found;
}

/// A reflexive relation on a poset given by leq(i, j).
struct Rel {
    std::size_t n;
    std::vector<std::vector<bool>> r;
};

/// Definition check: reflexive, refines <=, transitive, and for x -> y, z <= y,
/// every maximal lower bound w of x and z has w -> z.
inline bool is_transfer_system(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq, const Rel& rel) {
    for (std::size_t i = 0; i < n; ++i)
        if (!rel.r[i][i]) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rel.r[i][j] && !leq(i, j)) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (rel.r[i][j] && rel.r[j][k] && !rel.r[i][k]) return false;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (!rel.r[x][y]) continue;
            for (std::size_t z = 0; z < n; ++z) {
                if (!leq(z, y)) continue;
                for (std::size_t w = 0; w < n; ++w) {
                    if (!leq(w, x) || !leq(w, z)) continue;
                    bool maximal = true;
                    for (std::size_t v = 0; v < n && maximal; ++v)
                        if (v != w && leq(w, v) && leq(v, x) && leq(v, z)) maximal = false;
                    if (maximal && !rel.r[w][z]) return false;
                }
            }
        }
    return true;
}

/// Count of transfer systems by filtering every reflexive sub-relation of <=.
inline std::size_t naive_count(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && leq(i, j)) pairs.emplace_back(i, j);
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
        Rel rel{n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false))};
        for (std::size_t i = 0; i < n; ++i) rel.r[i][i] = true;
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if (mask >> b & 1u) rel.r[pairs[b].first][pairs[b].second] = true;
        if (is_transfer_system(n, leq, rel)) ++count;
    }
    return count;
}

inline std::uint64_t catalan(unsigned n) {
    std::uint64_t c = 1;
    for (unsigned k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

inline std::size_t gcd(std::size_t a, std::size_t b) { return b == 0 ? a : gcd(b, a % b); }

} // namespace oracle
