#include "normlift/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "normlift/error.hpp"

namespace normlift {

namespace {

constexpr std::size_t meet_table_bound = 4096;

struct Candidate {
    Bits elements;
    std::vector<Element> gens;
};

// Closure of the subgroup `h` (as element list) under right multiplication by gens.
Bits extend(const Group& g, const Bits& h, const std::vector<Element>& h_elems, const std::vector<Element>& gens) {
    Bits set = h;
    std::vector<Element> list = h_elems;
    for (std::size_t i = 0; i < list.size(); ++i)
        for (Element s : gens) {
            const Element y = g.mul(list[i], s);
            if (set.insert(y)) list.push_back(y);
        }
    return set;
}

std::vector<Element> elements_of(const Bits& b) {
    std::vector<Element> out;
    out.reserve(b.count());
    b.for_each([&](std::size_t i) { out.push_back(static_cast<Element>(i)); });
    return out;
}

class Enumerator {
  public:
    Enumerator(const Group& g, const Limits& limits) : g_{g}, limits_{limits} {}

    std::vector<Bits> run() {
        collect_cyclic();
        std::vector<std::size_t> queue;
        for (std::size_t i = 0; i < found_.size(); ++i)
            if (is_new_class_rep(i)) queue.push_back(i);
        for (std::size_t q = 0; q < queue.size(); ++q) {
            const std::size_t h = queue[q];
            const Bits hset = found_[h].elements;
            const auto h_elems = elements_of(hset);
            for (std::size_t c : cyclic_) {
                const Element x = found_[c].gens.front();
                if (hset.test(x)) continue;
                auto gens = found_[h].gens;
                gens.push_back(x);
                Bits j = extend(g_, hset, h_elems, gens);
                if (index_.count(j) != 0) continue;
                const std::size_t id = add(std::move(j), std::move(gens));
                add_orbit(id);
                queue.push_back(id);
            }
        }
        std::vector<Bits> out;
        out.reserve(found_.size());
        for (auto& c : found_) out.push_back(std::move(c.elements));
        return out;
    }

  private:
    void collect_cyclic() {
        const std::size_t n = g_.order();
        std::vector<bool> covered(n, false);
        for (Element x = 0; x < n; ++x) {
            if (covered[x]) continue;
            const Element gen[1] = {x};
            Bits c = generated_subgroup(g_, std::span<const Element>(gen, x == 0 ? 0 : 1));
            const std::size_t ord = g_.element_order(x);
            // Every element generating the same cyclic subgroup is covered.
            Element y = x;
            for (std::size_t k = 1; k <= ord; ++k) {
                if (std::gcd(k, ord) == 1) covered[y] = true;
                y = g_.mul(y, x);
            }
            std::vector<Element> gens;
            if (x != 0) gens.push_back(x);
            const std::size_t id = add(std::move(c), std::move(gens));
            if (x != 0) cyclic_.push_back(id);
        }
    }

    bool is_new_class_rep(std::size_t i) {
        if (class_seen_.size() < found_.size()) class_seen_.resize(found_.size(), false);
        if (class_seen_[i]) return false;
        for (std::size_t j : orbit_of(i)) class_seen_[j] = true;
        return true;
    }

    std::vector<std::size_t> orbit_of(std::size_t i) {
        std::vector<std::size_t> orbit{i};
        for (std::size_t k = 0; k < orbit.size(); ++k)
            for (Element s : g_.generators()) {
                Bits c = conjugate_set(g_, found_[orbit[k]].elements, s);
                auto it = index_.find(c);
                std::size_t id = 0;
                if (it == index_.end()) {
                    std::vector<Element> gens;
                    for (Element y : found_[orbit[k]].gens) gens.push_back(g_.conj(s, y));
                    id = add(std::move(c), std::move(gens));
                } else {
                    id = it->second;
                }
                if (std::find(orbit.begin(), orbit.end(), id) == orbit.end()) orbit.push_back(id);
            }
        return orbit;
    }

    void add_orbit(std::size_t id) {
        for (std::size_t j : orbit_of(id)) {
            if (class_seen_.size() <= j) class_seen_.resize(j + 1, false);
            class_seen_[j] = true;
        }
    }

    std::size_t add(Bits b, std::vector<Element> gens) {
        if (found_.size() >= limits_.max_subgroups)
            throw TooLarge("more than " + std::to_string(limits_.max_subgroups) + " subgroups in " +
                           g_.spec().to_string());
        const std::size_t id = found_.size();
        index_.emplace(b, id);
        found_.push_back({std::move(b), std::move(gens)});
        return id;
    }

    const Group& g_;
    const Limits& limits_;
    std::vector<Candidate> found_;
    std::unordered_map<Bits, std::size_t, BitsHash> index_;
    std::vector<std::size_t> cyclic_;
    std::vector<bool> class_seen_;
};

} // namespace

std::optional<std::size_t> SubgroupLattice::index_of(const Bits& elements) const {
    auto it = index_.find(elements);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SubgroupLattice enumerate_subgroups(Group group, const Limits& limits) {
    if (group.order() > limits.max_group_order)
        throw TooLarge("group order " + std::to_string(group.order()) + " exceeds the bound " +
                       std::to_string(limits.max_group_order));
    SubgroupLattice l;
    l.group_ = std::make_shared<const Group>(std::move(group));
    const Group& g = *l.group_;

    auto subs = Enumerator(g, limits).run();
    std::vector<std::size_t> order(subs.size());
    std::vector<std::size_t> counts(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) counts[i] = subs[i].count();
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (counts[a] != counts[b]) return counts[a] < counts[b];
        return subs[a].lex_less(subs[b]);
    });
    const std::size_t n = subs.size();
    l.subgroups_.reserve(n);
    for (std::size_t i : order) {
        l.orders_.push_back(counts[i]);
        l.subgroups_.push_back(std::move(subs[i]));
    }
    for (std::size_t i = 0; i < n; ++i) l.index_.emplace(l.subgroups_[i], i);

    l.cyclic_.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        bool cyc = false;
        l.subgroups_[i].for_each([&](std::size_t x) {
            if (g.element_order(static_cast<Element>(x)) == l.orders_[i]) cyc = true;
        });
        l.cyclic_[i] = cyc;
    }

    l.down_.assign(n, Bits(n));
    l.up_.assign(n, Bits(n));
    for (std::size_t j = 0; j < n; ++j) {
        l.down_[j].set(j);
        l.up_[j].set(j);
        for (std::size_t i = 0; i < j; ++i) {
            if (l.orders_[i] == l.orders_[j] || l.orders_[j] % l.orders_[i] != 0) continue;
            if (l.subgroups_[i].is_subset_of(l.subgroups_[j])) {
                l.down_[j].set(i);
                l.up_[i].set(j);
            }
        }
    }

    if (n <= meet_table_bound) {
        l.meet_table_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const auto m = static_cast<std::uint16_t>((l.down_[i] & l.down_[j]).find_last());
                l.meet_table_[i * n + j] = m;
                l.meet_table_[j * n + i] = m;
            }
    }

    // Conjugation by each generator, then all elements by composing along a
    // breadth-first spanning tree: act[p s] = act[p] o act[s].
    const auto& gens = g.generators();
    std::vector<std::vector<std::uint32_t>> by_gen(gens.size(), std::vector<std::uint32_t>(n));
    for (std::size_t k = 0; k < gens.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            by_gen[k][i] = static_cast<std::uint32_t>(l.index_.at(conjugate_set(g, l.subgroups_[i], gens[k])));
    l.act_.assign(g.order() * n, 0);
    std::iota(l.act_.begin(), l.act_.begin() + static_cast<std::ptrdiff_t>(n), std::uint32_t{0});
    {
        std::vector<bool> seen(g.order(), false);
        std::vector<Element> bfs{Group::identity};
        seen[0] = true;
        for (std::size_t q = 0; q < bfs.size(); ++q) {
            const Element p = bfs[q];
            for (std::size_t k = 0; k < gens.size(); ++k) {
                const Element y = g.mul(p, gens[k]);
                if (seen[y]) continue;
                seen[y] = true;
                bfs.push_back(y);
                const std::uint32_t* src = &l.act_[static_cast<std::size_t>(p) * n];
                std::uint32_t* dst = &l.act_[static_cast<std::size_t>(y) * n];
                for (std::size_t i = 0; i < n; ++i) dst[i] = src[by_gen[k][i]];
            }
        }
    }

    constexpr std::size_t unset = ~std::size_t{0};
    l.class_of_.assign(n, unset);
    for (std::size_t i = 0; i < n; ++i) {
        if (l.class_of_[i] != unset) continue;
        const std::size_t c = l.class_members_.size();
        std::vector<std::size_t> members{i};
        l.class_of_[i] = c;
        for (std::size_t q = 0; q < members.size(); ++q)
            for (std::size_t k = 0; k < gens.size(); ++k) {
                const std::size_t j = by_gen[k][members[q]];
                if (l.class_of_[j] == unset) {
                    l.class_of_[j] = c;
                    members.push_back(j);
                }
            }
        std::sort(members.begin(), members.end());
        l.class_members_.push_back(std::move(members));
    }

    l.normalizer_of_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        Bits norm(g.order());
        for (Element x = 0; x < g.order(); ++x)
            if (l.act(x, i) == i) norm.set(x);
        l.normalizer_of_[i] = l.index_.at(norm);
    }
    return l;
}

ClassPoset quotient_poset(const SubgroupLattice& l) {
    ClassPoset cp;
    const std::size_t c = l.class_count();
    cp.pi.resize(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) cp.pi[i] = l.class_of(i);
    std::vector<Bits> down(c, Bits(c));
    std::vector<std::string> labels;
    for (std::size_t b = 0; b < c; ++b) {
        const std::size_t rep = l.class_rep(b);
        cp.classes.push_back({rep, l.class_members(b).size(), l.order_of(rep)});
        // [K] <= [H] iff some conjugate of K lies in the representative of [H].
        l.down(rep).for_each([&](std::size_t k) { down[b].set(l.class_of(k)); });
        labels.push_back("[" + std::to_string(rep) + "]");
    }
    cp.poset = FinitePoset::from_down_sets(std::move(down), std::move(labels));
    return cp;
}

std::vector<std::size_t> prime_factors(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<std::size_t> hall_subgroups(const SubgroupLattice& l, const std::vector<std::size_t>& primes) {
    auto only_primes = [&](std::size_t m) {
        for (std::size_t p : prime_factors(m))
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) return false;
        return true;
    };
    auto coprime = [&](std::size_t m) {
        return std::all_of(primes.begin(), primes.end(), [&](std::size_t p) { return m % p != 0; });
    };
    const std::size_t n = l.group().order();
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < l.size(); ++i)
        if (only_primes(l.order_of(i)) && coprime(n / l.order_of(i))) out.push_back(i);
    return out;
}

IntervalPoset interval_poset(const SubgroupLattice& l, std::size_t n) {
    if (!l.is_normal(n)) throw NotNormal("interval [N, G] needs N normal");
    IntervalPoset out;
    l.up(n).for_each([&](std::size_t i) { out.subgroups.push_back(i); });
    std::vector<Bits> down(out.subgroups.size(), Bits(out.subgroups.size()));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < out.subgroups.size(); ++a) {
        for (std::size_t b = 0; b < out.subgroups.size(); ++b)
            if (l.leq(out.subgroups[b], out.subgroups[a])) down[a].set(b);
        labels.push_back(std::to_string(out.subgroups[a]));
    }
    out.poset = FinitePoset::from_down_sets(std::move(down), std::move(labels));
    return out;
}

} // namespace normlift
