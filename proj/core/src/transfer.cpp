#include "normlift/transfer.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_set>

#include "normlift/error.hpp"
#include "normlift/parallel.hpp"

namespace normlift {

// ---------------------------------------------------------------------------
// Relation

Relation::Relation(std::size_t size) : out_(size, Bits(size)) {
    for (std::size_t i = 0; i < size; ++i) out_[i].set(i);
}

std::vector<Arrow> Relation::arrows() const {
    std::vector<Arrow> out;
    for (std::size_t i = 0; i < out_.size(); ++i)
        out_[i].for_each([&](std::size_t j) {
            if (j != i) out.emplace_back(i, j);
        });
    return out;
}

std::size_t Relation::arrow_count() const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < out_.size(); ++i) c += out_[i].count() - (out_[i].test(i) ? 1 : 0);
    return c;
}

bool Relation::contains(const Relation& other) const {
    for (std::size_t i = 0; i < out_.size(); ++i)
        if (!other.out_[i].is_subset_of(out_[i])) return false;
    return true;
}

bool Relation::canonical_less(const Relation& other) const {
    for (std::size_t i = 0; i < out_.size(); ++i) {
        if (out_[i] == other.out_[i]) continue;
        return out_[i].lex_less(other.out_[i]);
    }
    return false;
}

std::size_t Relation::hash() const {
    std::size_t h = out_.size();
    for (const Bits& b : out_) h = h * 0x9e3779b97f4a7c15ULL ^ b.hash();
    return h;
}

Relation relation_from_arrows(std::size_t size, std::span<const Arrow> arrows) {
    Relation r(size);
    for (auto [i, j] : arrows) {
        if (i >= size || j >= size) throw InvalidArrow("arrow index out of range");
        r.add(i, j);
    }
    return r;
}

Relation full_relation(const FinitePoset& p) {
    Relation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) p.up(i).for_each([&](std::size_t j) { r.add(i, j); });
    return r;
}

Relation full_relation(const SubgroupLattice& l) {
    Relation r(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) l.up(i).for_each([&](std::size_t j) { r.add(i, j); });
    return r;
}

// ---------------------------------------------------------------------------
// Validators

namespace {

Diagnosis fail(std::string axiom, Arrow a, Arrow missing) { return Diagnosis{false, std::move(axiom), a, missing}; }

template <typename Leq>
std::optional<Diagnosis> check_common(const Relation& r, Leq leq) {
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!r.has(i, i)) return fail("reflexivity", {i, i}, {i, i});
    for (auto [i, j] : r.arrows())
        if (!leq(i, j)) return fail("refinement", {i, j}, {i, j});
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::optional<Diagnosis> bad;
        r.targets(i).for_each([&](std::size_t j) {
            if (bad || j == i) return;
            r.targets(j).for_each([&](std::size_t k) {
                if (!bad && !r.has(i, k)) bad = fail("transitivity", {i, j}, {i, k});
            });
        });
        if (bad) return bad;
    }
    return std::nullopt;
}

} // namespace

Diagnosis check_g_transfer_system(const SubgroupLattice& l, const Relation& r) {
    if (r.size() != l.size()) throw CarrierMismatch("relation size differs from the subgroup lattice");
    if (auto d = check_common(r, [&](std::size_t i, std::size_t j) { return l.leq(i, j); })) return *d;
    const auto arrows = r.arrows();
    for (Element s : l.group().generators())
        for (auto [k, h] : arrows) {
            const Arrow c{l.act(s, k), l.act(s, h)};
            if (!r.has(c.first, c.second)) return fail("conjugation", {k, h}, c);
        }
    for (auto [k, h] : arrows) {
        std::optional<Diagnosis> bad;
        l.down(h).for_each([&](std::size_t m) {
            if (bad) return;
            const std::size_t km = l.meet(k, m);
            if (!r.has(km, m)) bad = fail("restriction", {k, h}, {km, m});
        });
        if (bad) return *bad;
    }
    return {};
}

Diagnosis check_cat_transfer_system(const FinitePoset& p, const Relation& r) {
    if (r.size() != p.size()) throw CarrierMismatch("relation size differs from the poset");
    if (auto d = check_common(r, [&](std::size_t i, std::size_t j) { return p.leq(i, j); })) return *d;
    for (auto [x, y] : r.arrows()) {
        std::optional<Diagnosis> bad;
        p.down(y).for_each([&](std::size_t z) {
            if (bad) return;
            for (std::size_t w : p.maximal_lower_bounds(x, z))
                if (!r.has(w, z)) {
                    bad = fail("restriction", {x, y}, {w, z});
                    return;
                }
        });
        if (bad) return *bad;
    }
    return {};
}

// ---------------------------------------------------------------------------
// Closures

namespace {

/// Worklist closure shared by both flavours; `rules` receives each new arrow
/// and a callback to add derived arrows.
class Closer {
  public:
    explicit Closer(std::size_t n) : r_(n), in_(n, Bits(n)) {
        for (std::size_t i = 0; i < n; ++i) in_[i].set(i);
    }

    void push(std::size_t k, std::size_t h) {
        if (k == h) return;
        if (r_.add(k, h)) {
            in_[h].set(k);
            work_.emplace_back(k, h);
        }
    }

    template <typename Rules>
    Relation run(Rules&& rules) {
        while (!work_.empty()) {
            const auto [k, h] = work_.front();
            work_.pop_front();
            rules(k, h);
            r_.targets(h).for_each([&](std::size_t j) { push(k, j); });
            in_[k].for_each([&](std::size_t i) { push(i, h); });
        }
        return std::move(r_);
    }

  private:
    Relation r_;
    std::vector<Bits> in_;
    std::deque<Arrow> work_;
};

void check_seed(std::span<const Arrow> seed, std::size_t n, const std::function<bool(std::size_t, std::size_t)>& leq) {
    for (auto [k, h] : seed) {
        if (k >= n || h >= n) throw InvalidArrow("arrow index out of range");
        if (!leq(k, h))
            throw InvalidArrow("arrow " + std::to_string(k) + " -> " + std::to_string(h) + " does not refine the order");
    }
}

/// Maximal lower bounds of all pairs, computed once per poset.
class MlbTable {
  public:
    explicit MlbTable(const FinitePoset& p) : n_{p.size()}, table_(n_ * n_) {
        for (std::size_t x = 0; x < n_; ++x)
            for (std::size_t z = 0; z < n_; ++z) table_[x * n_ + z] = p.maximal_lower_bounds(x, z);
    }
    [[nodiscard]] const std::vector<std::size_t>& at(std::size_t x, std::size_t z) const { return table_[x * n_ + z]; }

  private:
    std::size_t n_;
    std::vector<std::vector<std::size_t>> table_;
};

Relation cat_closure_with(const FinitePoset& p, const MlbTable& mlb, std::span<const Arrow> seed) {
    Closer c(p.size());
    for (auto [k, h] : seed) c.push(k, h);
    return c.run([&](std::size_t x, std::size_t y) {
        p.down(y).for_each([&](std::size_t z) {
            for (std::size_t w : mlb.at(x, z)) c.push(w, z);
        });
    });
}

} // namespace

Relation g_closure(const SubgroupLattice& l, std::span<const Arrow> seed) {
    check_seed(seed, l.size(), [&](std::size_t i, std::size_t j) { return l.leq(i, j); });
    Closer c(l.size());
    for (auto [k, h] : seed) c.push(k, h);
    const auto& gens = l.group().generators();
    return c.run([&](std::size_t k, std::size_t h) {
        for (Element s : gens) c.push(l.act(s, k), l.act(s, h));
        l.down(h).for_each([&](std::size_t m) { c.push(l.meet(k, m), m); });
    });
}

Relation g_closure(const SubgroupLattice& l, const Relation& seed) {
    if (seed.size() != l.size()) throw CarrierMismatch("seed size differs from the subgroup lattice");
    const auto arrows = seed.arrows();
    return g_closure(l, arrows);
}

Relation cat_closure(const FinitePoset& p, std::span<const Arrow> seed) {
    check_seed(seed, p.size(), [&](std::size_t i, std::size_t j) { return p.leq(i, j); });
    return cat_closure_with(p, MlbTable(p), seed);
}

Relation cat_closure(const FinitePoset& p, const Relation& seed) {
    if (seed.size() != p.size()) throw CarrierMismatch("seed size differs from the poset");
    const auto arrows = seed.arrows();
    return cat_closure(p, arrows);
}

std::vector<std::vector<Arrow>> arrow_orbits(const SubgroupLattice& l) {
    const std::size_t n = l.size();
    std::vector<Bits> seen(n, Bits(n));
    std::vector<std::vector<Arrow>> out;
    const auto& gens = l.group().generators();
    for (std::size_t k = 0; k < n; ++k)
        l.up(k).for_each([&](std::size_t h) {
            if (h == k || seen[k].test(h)) return;
            std::vector<Arrow> orbit{{k, h}};
            seen[k].set(h);
            for (std::size_t q = 0; q < orbit.size(); ++q)
                for (Element s : gens) {
                    const std::size_t a = l.act(s, orbit[q].first), b = l.act(s, orbit[q].second);
                    if (seen[a].insert(b)) orbit.emplace_back(a, b);
                }
            std::sort(orbit.begin(), orbit.end());
            out.push_back(std::move(orbit));
        });
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

/// Closure operator on subsets of m generator items.
using ItemClosure = std::function<Bits(const Bits&)>;

std::vector<Bits> next_closure(std::size_t m, const ItemClosure& close) {
    std::vector<Bits> out;
    Bits a = close(Bits(m));
    out.push_back(a);
    while (true) {
        bool advanced = false;
        for (std::size_t i = m; i-- > 0;) {
            if (a.test(i)) {
                a.reset(i);
                continue;
            }
            Bits seed = a;
            seed.set(i);
            Bits b = close(seed);
            // Accept iff b adds nothing below i.
            Bits added = b - a;
            if (added.find_first() >= i) {
                a = std::move(b);
                out.push_back(a);
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

std::vector<Bits> subset_closure(std::size_t m, const ItemClosure& close) {
    if (m > subset_closure_bound)
        throw TooLarge("subset-closure enumeration is bounded to " + std::to_string(subset_closure_bound) +
                       " generators, got " + std::to_string(m));
    const std::size_t total = std::size_t{1} << m;
    constexpr std::size_t chunk = 4096;
    const std::size_t chunks = (total + chunk - 1) / chunk;
    std::unordered_set<Bits, BitsHash> found;
    std::mutex mutex;
    parallel_for(chunks, [&](std::size_t c) {
        std::unordered_set<Bits, BitsHash> local;
        for (std::size_t mask = c * chunk; mask < std::min(total, (c + 1) * chunk); ++mask) {
            Bits seed(m);
            for (std::size_t i = 0; i < m; ++i)
                if ((mask >> i) & 1U) seed.set(i);
            local.insert(close(seed));
        }
        std::lock_guard lock(mutex);
        found.insert(local.begin(), local.end());
    });
    return {found.begin(), found.end()};
}

std::vector<Bits> enumerate_items(std::size_t m, const ItemClosure& close, EnumerationStrategy strategy) {
    return strategy == EnumerationStrategy::next_closure ? next_closure(m, close) : subset_closure(m, close);
}

void sort_canonical(std::vector<Relation>& v) {
    std::sort(v.begin(), v.end(), [](const Relation& a, const Relation& b) { return a.canonical_less(b); });
}

} // namespace

std::vector<Relation> enumerate_cat_transfer_systems(const FinitePoset& p, EnumerationStrategy strategy) {
    const auto items = p.strict_pairs();
    const MlbTable mlb(p);
    auto to_items = [&](const Relation& r) {
        Bits b(items.size());
        for (std::size_t t = 0; t < items.size(); ++t)
            if (r.has(items[t].first, items[t].second)) b.set(t);
        return b;
    };
    auto close = [&](const Bits& seed) {
        std::vector<Arrow> arrows;
        seed.for_each([&](std::size_t t) { arrows.push_back(items[t]); });
        return to_items(cat_closure_with(p, mlb, arrows));
    };
    std::vector<Relation> out;
    for (const Bits& b : enumerate_items(items.size(), close, strategy)) {
        std::vector<Arrow> arrows;
        b.for_each([&](std::size_t t) { arrows.push_back(items[t]); });
        out.push_back(relation_from_arrows(p.size(), arrows));
    }
    sort_canonical(out);
    return out;
}

std::vector<Relation> enumerate_g_transfer_systems(const SubgroupLattice& l, EnumerationStrategy strategy) {
    const auto orbits = arrow_orbits(l);
    auto to_items = [&](const Relation& r) {
        Bits b(orbits.size());
        for (std::size_t t = 0; t < orbits.size(); ++t)
            if (r.has(orbits[t].front().first, orbits[t].front().second)) b.set(t);
        return b;
    };
    auto seed_arrows = [&](const Bits& seed) {
        std::vector<Arrow> arrows;
        seed.for_each([&](std::size_t t) { arrows.push_back(orbits[t].front()); });
        return arrows;
    };
    auto close = [&](const Bits& seed) { return to_items(g_closure(l, seed_arrows(seed))); };
    std::vector<Relation> out;
    for (const Bits& b : enumerate_items(orbits.size(), close, strategy)) {
        Relation r(l.size());
        b.for_each([&](std::size_t t) {
            for (auto [k, h] : orbits[t]) r.add(k, h);
        });
        out.push_back(std::move(r));
    }
    sort_canonical(out);
    return out;
}

} // namespace normlift
