#include "normlift/poset.hpp"

#include <algorithm>
#include <numeric>

#include "normlift/error.hpp"

namespace normlift {

namespace {

constexpr std::size_t max_isomorphism_size = 64;

std::vector<Bits> transpose(const std::vector<Bits>& rows) {
    std::vector<Bits> out(rows.size(), Bits(rows.size()));
    for (std::size_t j = 0; j < rows.size(); ++j) rows[j].for_each([&](std::size_t i) { out[i].set(j); });
    return out;
}

} // namespace

FinitePoset FinitePoset::from_pairs(std::size_t size, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                    std::vector<std::string> labels) {
    std::vector<Bits> down(size, Bits(size));
    for (std::size_t i = 0; i < size; ++i) down[i].set(i);
    for (auto [i, j] : pairs) {
        if (i >= size || j >= size) throw InvalidArrow("poset pair out of range");
        down[j].set(i);
    }
    // Warshall closure on down-sets.
    for (std::size_t k = 0; k < size; ++k)
        for (std::size_t j = 0; j < size; ++j)
            if (down[j].test(k)) down[j] |= down[k];
    return from_down_sets(std::move(down), std::move(labels));
}

FinitePoset FinitePoset::from_down_sets(std::vector<Bits> down, std::vector<std::string> labels) {
    const std::size_t n = down.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (down[i].size() != n) throw InvalidArrow("poset row has the wrong length");
        if (!down[i].test(i)) throw InvalidArrow("poset relation is not reflexive");
    }
    for (std::size_t j = 0; j < n; ++j) {
        bool ok = true;
        down[j].for_each([&](std::size_t i) {
            if (i != j && down[i].test(j)) ok = false;
            if (!down[i].is_subset_of(down[j])) ok = false;
        });
        if (!ok) throw InvalidArrow("poset relation is not antisymmetric and transitive");
    }
    FinitePoset p;
    p.up_ = transpose(down);
    p.down_ = std::move(down);
    if (labels.size() == n) p.labels_ = std::move(labels);
    return p;
}

std::string FinitePoset::label(std::size_t i) const {
    return i < labels_.size() ? labels_[i] : std::to_string(i);
}

std::vector<std::size_t> FinitePoset::maximal_lower_bounds(std::size_t x, std::size_t y) const {
    const Bits common = down_[x] & down_[y];
    std::vector<std::size_t> out;
    common.for_each([&](std::size_t w) {
        // w is maximal iff no other common lower bound lies strictly above it.
        if ((up_[w] & common).count() == 1) out.push_back(w);
    });
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::hasse_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t j = 0; j < size(); ++j)
        down_[j].for_each([&](std::size_t i) {
            if (i == j) return;
            // Strictly between i and j.
            if ((up_[i] & down_[j]).count() == 2) out.emplace_back(i, j);
        });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::strict_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
        up_[i].for_each([&](std::size_t j) {
            if (j != i) out.emplace_back(i, j);
        });
    return out;
}

std::optional<std::size_t> FinitePoset::bottom() const {
    for (std::size_t i = 0; i < size(); ++i)
        if (up_[i].count() == size()) return i;
    return std::nullopt;
}

std::optional<std::size_t> FinitePoset::top() const {
    for (std::size_t i = 0; i < size(); ++i)
        if (down_[i].count() == size()) return i;
    return std::nullopt;
}

FinitePoset FinitePoset::induced(const std::vector<std::size_t>& keep) const {
    std::vector<Bits> down(keep.size(), Bits(keep.size()));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = 0; b < keep.size(); ++b)
            if (leq(keep[b], keep[a])) down[a].set(b);
        labels.push_back(label(keep[a]));
    }
    return from_down_sets(std::move(down), std::move(labels));
}

FinitePoset chain(std::size_t n) {
    std::vector<Bits> down(n + 1, Bits(n + 1));
    std::vector<std::string> labels;
    for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i <= j; ++i) down[j].set(i);
        labels.push_back(std::to_string(j));
    }
    return FinitePoset::from_down_sets(std::move(down), std::move(labels));
}

FinitePoset product(const FinitePoset& p, const FinitePoset& q) {
    const std::size_t np = p.size(), nq = q.size(), n = np * nq;
    std::vector<Bits> down(n, Bits(n));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; ++a) {
        p.down(a / nq).for_each([&](std::size_t i) {
            q.down(a % nq).for_each([&](std::size_t j) { down[a].set(i * nq + j); });
        });
        labels.push_back("(" + p.label(a / nq) + "," + q.label(a % nq) + ")");
    }
    return FinitePoset::from_down_sets(std::move(down), std::move(labels));
}

std::vector<std::size_t> divisors(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

FinitePoset divisor_lattice(std::size_t n) {
    const auto ds = divisors(n);
    std::vector<Bits> down(ds.size(), Bits(ds.size()));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < ds.size(); ++a) {
        for (std::size_t b = 0; b < ds.size(); ++b)
            if (ds[a] % ds[b] == 0) down[a].set(b);
        labels.push_back(std::to_string(ds[a]));
    }
    return FinitePoset::from_down_sets(std::move(down), std::move(labels));
}

FinitePoset diamond_with_tail() {
    return FinitePoset::from_pairs(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}}, {"0", "a", "b", "1", "t"});
}

namespace {

struct Signature {
    std::size_t below;
    std::size_t above;
    std::size_t covers_down;
    std::size_t covers_up;
    auto operator<=>(const Signature&) const = default;
};

std::vector<Signature> signatures(const FinitePoset& p) {
    std::vector<Signature> out(p.size(), Signature{0, 0, 0, 0});
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i].below = p.down(i).count();
        out[i].above = p.up(i).count();
    }
    for (auto [i, j] : p.hasse_edges()) {
        ++out[i].covers_up;
        ++out[j].covers_down;
    }
    return out;
}

class PosetMatcher {
  public:
    PosetMatcher(const FinitePoset& p, const FinitePoset& q)
        : p_{p}, q_{q}, sp_{signatures(p)}, sq_{signatures(q)}, map_(p.size(), 0), used_(q.size(), false) {
        order_.resize(p.size());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return sp_[a].below < sp_[b].below; });
    }

    bool run(std::size_t k = 0) {
        if (k == order_.size()) return true;
        const std::size_t x = order_[k];
        for (std::size_t y = 0; y < q_.size(); ++y) {
            if (used_[y] || sp_[x] != sq_[y]) continue;
            bool ok = true;
            for (std::size_t t = 0; t < k && ok; ++t) {
                const std::size_t a = order_[t];
                if (p_.leq(a, x) != q_.leq(map_[a], y) || p_.leq(x, a) != q_.leq(y, map_[a])) ok = false;
            }
            if (!ok) continue;
            map_[x] = y;
            used_[y] = true;
            if (run(k + 1)) return true;
            used_[y] = false;
        }
        return false;
    }

    [[nodiscard]] const std::vector<std::size_t>& map() const { return map_; }

  private:
    const FinitePoset& p_;
    const FinitePoset& q_;
    std::vector<Signature> sp_;
    std::vector<Signature> sq_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> map_;
    std::vector<bool> used_;
};

} // namespace

std::optional<std::vector<std::size_t>> is_isomorphic_poset(const FinitePoset& p, const FinitePoset& q) {
    if (p.size() > max_isomorphism_size || q.size() > max_isomorphism_size)
        throw TooLarge("poset isomorphism is bounded to 64 elements");
    if (p.size() != q.size()) return std::nullopt;
    auto a = signatures(p), b = signatures(q);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
    PosetMatcher m(p, q);
    if (!m.run()) return std::nullopt;
    return m.map();
}

} // namespace normlift
