#include "normlift/group.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "normlift/error.hpp"

namespace normlift {

namespace {

constexpr std::size_t exhaustive_associativity_bound = 512;
constexpr std::size_t sampled_associativity_triples = 200000;
constexpr std::size_t table_order_cap = 65535;

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

unsigned pow_mod(unsigned base, unsigned exp, unsigned mod) {
    std::uint64_t result = 1 % mod;
    std::uint64_t b = base % mod;
    while (exp > 0) {
        if (exp & 1U) result = result * b % mod;
        b = b * b % mod;
        exp >>= 1U;
    }
    return static_cast<unsigned>(result);
}

void check_order(std::size_t order, const Limits& limits, const std::string& what) {
    if (order > limits.max_group_order || order > table_order_cap)
        throw TooLarge(what + " has order " + std::to_string(order) + ", above the bound " +
                       std::to_string(std::min(limits.max_group_order, table_order_cap)));
}

// ---------------------------------------------------------------------------
// Breadth-first materialization of a group given by concrete generators.

template <typename T, typename Hash, typename Mul, typename Label>
Group materialize(const GroupSpec& spec, const T& identity, const std::vector<T>& gens, Mul mul, Label label,
                  const Limits& limits, const std::string& what) {
    std::vector<T> elems{identity};
    std::unordered_map<T, std::uint32_t, Hash> index;
    index.emplace(identity, 0);
    const std::size_t cap = std::min(limits.max_group_order, table_order_cap);
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const T& s : gens) {
            T y = mul(elems[i], s);
            if (index.find(y) == index.end()) {
                if (elems.size() >= cap)
                    throw TooLarge(what + " has more than " + std::to_string(cap) + " elements, the order bound");
                index.emplace(y, static_cast<std::uint32_t>(elems.size()));
                elems.push_back(std::move(y));
            }
        }
    }
    const std::size_t n = elems.size();
    std::vector<std::uint16_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<std::uint16_t>(index.at(mul(elems[a], elems[b])));
    std::vector<std::string> labels;
    labels.reserve(n);
    for (const T& e : elems) labels.push_back(label(e));
    return Group::from_table(spec, n, std::move(table), std::move(labels));
}

struct U64Hash {
    std::size_t operator()(std::uint64_t v) const { return std::hash<std::uint64_t>{}(v * 0x9e3779b97f4a7c15ULL); }
};

using Perm = std::vector<std::uint16_t>;

struct PermHash {
    std::size_t operator()(const Perm& p) const {
        std::size_t h = 1469598103934665603ULL;
        for (auto v : p) h = (h ^ v) * 1099511628211ULL;
        return h;
    }
};

// (p * q)(x) = p(q(x))
Perm compose(const Perm& p, const Perm& q) {
    Perm r(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
    return r;
}

std::string cycle_label(const Perm& p) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (seen[start] || p[start] == start) continue;
        out += '(';
        std::size_t x = start;
        bool first = true;
        while (!seen[x]) {
            seen[x] = true;
            if (!first) out += ',';
            out += std::to_string(x + 1);
            first = false;
            x = p[x];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Group build_perm_group(const GroupSpec& spec, unsigned degree, const std::vector<Perm>& gens, const Limits& limits,
                       const std::string& what) {
    Perm id(degree);
    std::iota(id.begin(), id.end(), std::uint16_t{0});
    return materialize<Perm, PermHash>(spec, id, gens, compose, cycle_label, limits, what);
}

std::string power_label(const char* sym, unsigned e) {
    if (e == 0) return {};
    if (e == 1) return sym;
    return std::string(sym) + "^" + std::to_string(e);
}

std::string word_label(const char* a, unsigned i, const char* b, unsigned j) {
    std::string s = power_label(a, i) + power_label(b, j);
    return s.empty() ? "e" : s;
}

// Z/n x| C_m with t a t^{-1} = a^k; element (i, j) = a^i t^j.
Group build_unit_semidirect(const GroupSpec& spec, unsigned n, unsigned k, unsigned m, const Limits& limits,
                            const char* a_sym = "a", const char* t_sym = "t") {
    std::vector<unsigned> kpow(m);
    for (unsigned j = 0; j < m; ++j) kpow[j] = pow_mod(k, j, n);
    auto mul = [=](std::uint64_t x, std::uint64_t y) {
        const auto i1 = static_cast<unsigned>(x / m), j1 = static_cast<unsigned>(x % m);
        const auto i2 = static_cast<unsigned>(y / m), j2 = static_cast<unsigned>(y % m);
        const std::uint64_t i = (i1 + static_cast<std::uint64_t>(kpow[j1]) * i2) % n;
        return i * m + (j1 + j2) % m;
    };
    auto label = [=](std::uint64_t x) {
        return word_label(a_sym, static_cast<unsigned>(x / m), t_sym, static_cast<unsigned>(x % m));
    };
    std::vector<std::uint64_t> gens;
    if (n > 1) gens.push_back(1ULL * m);
    if (m > 1) gens.push_back(1ULL);
    return materialize<std::uint64_t, U64Hash>(spec, 0ULL, gens, mul, label, limits, spec.to_string());
}

Group build_dicyclic(const GroupSpec& spec, unsigned n, const Limits& limits) {
    // a^i x^j with x a = a^{-1} x and x^2 = a^n.
    const unsigned two_n = 2 * n;
    auto mul = [=](std::uint64_t u, std::uint64_t v) -> std::uint64_t {
        const auto i1 = static_cast<unsigned>(u / 2), j1 = static_cast<unsigned>(u % 2);
        const auto i2 = static_cast<unsigned>(v / 2), j2 = static_cast<unsigned>(v % 2);
        if (j1 == 0) return ((i1 + i2) % two_n) * 2 + j2;
        unsigned i = (i1 + two_n - i2) % two_n;
        if (j2 == 1) return ((i + n) % two_n) * 2;
        return i * 2 + 1;
    };
    auto label = [](std::uint64_t u) {
        return word_label("a", static_cast<unsigned>(u / 2), "x", static_cast<unsigned>(u % 2));
    };
    return materialize<std::uint64_t, U64Hash>(spec, 0ULL, {2ULL, 1ULL}, mul, label, limits, spec.to_string());
}

Group build_sl2(const GroupSpec& spec, unsigned p, const Limits& limits) {
    // Matrix [[a, b], [c, d]] packed as ((a p + b) p + c) p + d.
    const std::uint64_t q = p;
    auto unpack = [=](std::uint64_t x) {
        std::array<std::uint64_t, 4> m{};
        m[3] = x % q;
        x /= q;
        m[2] = x % q;
        x /= q;
        m[1] = x % q;
        m[0] = x / q;
        return m;
    };
    auto pack = [=](std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
        return ((a * q + b) * q + c) * q + d;
    };
    auto mul = [=](std::uint64_t x, std::uint64_t y) {
        const auto m = unpack(x);
        const auto n = unpack(y);
        return pack((m[0] * n[0] + m[1] * n[2]) % q, (m[0] * n[1] + m[1] * n[3]) % q, (m[2] * n[0] + m[3] * n[2]) % q,
                    (m[2] * n[1] + m[3] * n[3]) % q);
    };
    auto label = [=](std::uint64_t x) {
        const auto m = unpack(x);
        return "[" + std::to_string(m[0]) + " " + std::to_string(m[1]) + "; " + std::to_string(m[2]) + " " +
               std::to_string(m[3]) + "]";
    };
    const std::uint64_t t = pack(1, 1 % q, 0, 1);
    const std::uint64_t s = pack(0, (q - 1) % q, 1 % q, 0);
    return materialize<std::uint64_t, U64Hash>(spec, pack(1, 0, 0, 1), {t, s}, mul, label, limits, spec.to_string());
}

unsigned primitive_root(unsigned p) {
    if (p == 2) return 1;
    for (unsigned g = 2; g < p; ++g) {
        bool ok = true;
        for (unsigned e = 1; e < p - 1 && ok; ++e)
            if (pow_mod(g, e, p) == 1) ok = false;
        if (ok) return g;
    }
    return 1;
}

Group build_agl1(const GroupSpec& spec, unsigned p, const Limits& limits) {
    // x -> a x + b packed as a p + b; composition (a,b)(c,d) = (ac, ad + b).
    const std::uint64_t q = p;
    auto mul = [=](std::uint64_t x, std::uint64_t y) {
        const std::uint64_t a = x / q, b = x % q, c = y / q, d = y % q;
        return (a * c % q) * q + (a * d + b) % q;
    };
    auto label = [=](std::uint64_t x) {
        return "x->" + std::to_string(x / q) + "x+" + std::to_string(x % q);
    };
    std::vector<std::uint64_t> gens{1 * q + 1 % q};
    const unsigned g = primitive_root(p);
    if (g != 1) gens.push_back(g * q);
    return materialize<std::uint64_t, U64Hash>(spec, q, gens, mul, label, limits, spec.to_string());
}

using Matrix = std::vector<std::vector<unsigned>>;

Matrix mat_mul(const Matrix& a, const Matrix& b, unsigned p) {
    const std::size_t d = a.size();
    Matrix c(d, std::vector<unsigned>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
    return c;
}

Matrix mat_identity(std::size_t d) {
    Matrix m(d, std::vector<unsigned>(d, 0));
    for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

Group build_vec_semidirect(const GroupSpec& spec, const family::VecSemidirect& v, const Limits& limits) {
    // (w, j): w in (Z/p)^d packed base p, j mod m; t w t^{-1} = A w.
    const unsigned d = v.d;
    const unsigned m = v.m;
    const unsigned p = v.p;
    std::uint64_t vec_count = 1;
    for (unsigned i = 0; i < d; ++i) vec_count *= p;
    std::vector<Matrix> powers{mat_identity(d)};
    for (unsigned j = 1; j < m; ++j) powers.push_back(mat_mul(powers.back(), v.a, p));
    auto unpack = [=](std::uint64_t w) {
        std::vector<unsigned> out(d);
        for (unsigned i = d; i-- > 0;) {
            out[i] = static_cast<unsigned>(w % p);
            w /= p;
        }
        return out;
    };
    auto pack = [=](const std::vector<unsigned>& w) {
        std::uint64_t out = 0;
        for (unsigned x : w) out = out * p + x;
        return out;
    };
    auto mul = [=](std::uint64_t x, std::uint64_t y) {
        const std::uint64_t w1 = x / m, j1 = x % m, w2 = y / m, j2 = y % m;
        const auto a = unpack(w1);
        const auto b = unpack(w2);
        const Matrix& aj = powers[j1];
        std::vector<unsigned> r(d);
        for (unsigned i = 0; i < d; ++i) {
            unsigned s = a[i];
            for (unsigned k = 0; k < d; ++k) s = (s + aj[i][k] * b[k]) % p;
            r[i] = s;
        }
        return pack(r) * m + (j1 + j2) % m;
    };
    auto label = [=](std::uint64_t x) {
        const auto w = unpack(x / m);
        std::string s = "(";
        for (unsigned i = 0; i < d; ++i) s += (i ? "," : "") + std::to_string(w[i]);
        s += ")";
        if (x % m != 0) s += power_label("t", static_cast<unsigned>(x % m));
        return s;
    };
    std::vector<std::uint64_t> gens;
    for (unsigned i = 0; i < d; ++i) {
        std::vector<unsigned> e(d, 0);
        e[i] = 1;
        gens.push_back(pack(e) * m);
    }
    if (m > 1) gens.push_back(1);
    (void)vec_count;
    return materialize<std::uint64_t, U64Hash>(spec, 0ULL, gens, mul, label, limits, spec.to_string());
}

Group build_product(const GroupSpec& spec, const Group& a, const Group& b, const Limits& limits) {
    const std::size_t na = a.order(), nb = b.order();
    check_order(na * nb, limits, spec.to_string());
    const std::size_t n = na * nb;
    std::vector<std::uint16_t> table(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const auto ea = a.mul(static_cast<Element>(x / nb), static_cast<Element>(y / nb));
            const auto eb = b.mul(static_cast<Element>(x % nb), static_cast<Element>(y % nb));
            table[x * n + y] = static_cast<std::uint16_t>(ea * nb + eb);
        }
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < n; ++x)
        labels.push_back("(" + a.label(static_cast<Element>(x / nb)) + "," + b.label(static_cast<Element>(x % nb)) +
                         ")");
    return Group::from_table(spec, n, std::move(table), std::move(labels));
}

Perm cycle_perm(unsigned degree, std::initializer_list<unsigned> cycle) {
    Perm p(degree);
    std::iota(p.begin(), p.end(), std::uint16_t{0});
    std::vector<unsigned> c(cycle);
    for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = static_cast<std::uint16_t>(c[(i + 1) % c.size()]);
    return p;
}

// ---------------------------------------------------------------------------
// Spec text grammar.

std::vector<std::string> split_args(std::string_view s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

unsigned parse_unsigned(std::string_view s, std::string_view whole) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    unsigned v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || ptr != end)
        throw ParseError("expected a non-negative integer in group spec '" + std::string(whole) + "', got '" +
                         std::string(s) + "'");
    return v;
}

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

bool starts_with_number(std::string_view s, std::string_view prefix) {
    if (s.substr(0, prefix.size()) != prefix || s.size() == prefix.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(prefix.size()), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

std::string matrix_to_string(const Matrix& a) {
    std::string s = "[";
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (i ? ",[" : "[");
        for (std::size_t j = 0; j < a[i].size(); ++j) s += (j ? "," : "") + std::to_string(a[i][j]);
        s += "]";
    }
    return s + "]";
}

} // namespace

Limits default_limits() {
    Limits l;
    if (const char* env = std::getenv("NORMLIFT_MAX_GROUP_ORDER")) {
        std::size_t v = 0;
        std::string_view sv{env};
        auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), v);
        if (ec == std::errc{} && ptr == sv.data() + sv.size() && v > 0) l.max_group_order = v;
    }
    return l;
}

GroupSpec GroupSpec::product(GroupSpec a, GroupSpec b) {
    return GroupSpec{family::Product{std::make_shared<const GroupSpec>(std::move(a)),
                                     std::make_shared<const GroupSpec>(std::move(b))}};
}

std::string GroupSpec::to_string() const {
    using namespace family;
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Trivial>) return "Trivial";
            else if constexpr (std::is_same_v<T, Cyclic>) return "C" + std::to_string(v.n);
            else if constexpr (std::is_same_v<T, Dihedral>) return "D" + std::to_string(v.n);
            else if constexpr (std::is_same_v<T, Dicyclic>) return "Dic" + std::to_string(v.n);
            else if constexpr (std::is_same_v<T, Semidihedral>) return "SD" + std::to_string(v.n);
            else if constexpr (std::is_same_v<T, ModularMaximalCyclic>) return "MM" + std::to_string(v.n);
            else if constexpr (std::is_same_v<T, Quaternion8>) return "Q8";
            else if constexpr (std::is_same_v<T, Symmetric>) return "S" + std::to_string(v.n);
            else if constexpr (std::is_same_v<T, Alternating>) return "A" + std::to_string(v.n);
            else if constexpr (std::is_same_v<T, SL2>) return "SL2(" + std::to_string(v.p) + ")";
            else if constexpr (std::is_same_v<T, AGL1>) return "AGL1(" + std::to_string(v.p) + ")";
            else if constexpr (std::is_same_v<T, Product>)
                return "prod(" + v.left->to_string() + "," + v.right->to_string() + ")";
            else if constexpr (std::is_same_v<T, UnitSemidirect>)
                return "sd(" + std::to_string(v.n) + "," + std::to_string(v.k) + "," + std::to_string(v.m) + ")";
            else if constexpr (std::is_same_v<T, VecSemidirect>)
                return "vsd(" + std::to_string(v.p) + "," + std::to_string(v.d) + "," + std::to_string(v.m) + "," +
                       matrix_to_string(v.a) + ")";
            else {
                if (!v.source.empty()) return "perm(" + v.source + ")";
                return "perm(" + perm_gens_to_json(v) + ")";
            }
        },
        value_);
}

GroupSpec GroupSpec::parse(std::string_view text) {
    using namespace family;
    const std::string s = trim(text);
    if (s.empty()) throw ParseError("empty group spec");
    if (s == "Trivial" || s == "1") return Trivial{};
    if (s == "Q8") return Quaternion8{};

    const auto open = s.find('(');
    if (open != std::string::npos) {
        if (s.back() != ')') throw ParseError("unbalanced parentheses in group spec '" + s + "'");
        const std::string head = s.substr(0, open);
        const std::string body = s.substr(open + 1, s.size() - open - 2);
        if (head == "SL2") return SL2{parse_unsigned(body, s)};
        if (head == "AGL1") return AGL1{parse_unsigned(body, s)};
        if (head == "prod") {
            const auto args = split_args(body);
            if (args.size() != 2) throw ParseError("prod(...) takes two group specs: '" + s + "'");
            return product(parse(args[0]), parse(args[1]));
        }
        if (head == "sd") {
            const auto args = split_args(body);
            if (args.size() != 3) throw ParseError("sd(n,k,m) takes three integers: '" + s + "'");
            return UnitSemidirect{parse_unsigned(args[0], s), parse_unsigned(args[1], s), parse_unsigned(args[2], s)};
        }
        if (head == "vsd") {
            const auto args = split_args(body);
            if (args.size() != 4) throw ParseError("vsd(p,d,m,matrix) takes four arguments: '" + s + "'");
            VecSemidirect v{parse_unsigned(args[0], s), parse_unsigned(args[1], s), parse_unsigned(args[2], s), {}};
            try {
                v.a = nlohmann::json::parse(args[3]).get<Matrix>();
            } catch (const nlohmann::json::exception& e) {
                throw ParseError("bad matrix in '" + s + "': " + e.what());
            }
            return v;
        }
        if (head == "perm") {
            const std::string arg = trim(body);
            if (!arg.empty() && arg.front() == '{') return perm_gens_from_json(arg);
            return load_perm_gens(arg);
        }
        throw ParseError("unknown group family '" + head + "'");
    }
    if (starts_with_number(s, "Dic")) return Dicyclic{parse_unsigned(s.substr(3), s)};
    if (starts_with_number(s, "SD")) return Semidihedral{parse_unsigned(s.substr(2), s)};
    if (starts_with_number(s, "MM")) return ModularMaximalCyclic{parse_unsigned(s.substr(2), s)};
    if (starts_with_number(s, "C")) return Cyclic{parse_unsigned(s.substr(1), s)};
    if (starts_with_number(s, "D")) return Dihedral{parse_unsigned(s.substr(1), s)};
    if (starts_with_number(s, "S")) return Symmetric{parse_unsigned(s.substr(1), s)};
    if (starts_with_number(s, "A")) return Alternating{parse_unsigned(s.substr(1), s)};
    throw ParseError("unrecognized group spec '" + s + "'");
}

family::PermGens perm_gens_from_json(std::string_view json_text, std::string source) {
    family::PermGens out;
    try {
        const auto j = nlohmann::json::parse(json_text);
        out.degree = j.at("degree").get<unsigned>();
        out.generators = j.at("generators").get<std::vector<std::vector<unsigned>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad permutation generator JSON: ") + e.what());
    }
    out.source = std::move(source);
    return out;
}

family::PermGens load_perm_gens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open permutation file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return perm_gens_from_json(ss.str(), path);
}

std::string perm_gens_to_json(const family::PermGens& gens) {
    nlohmann::json j;
    j["degree"] = gens.degree;
    j["generators"] = gens.generators;
    return j.dump();
}

// ---------------------------------------------------------------------------

Group Group::from_table(GroupSpec spec, std::size_t order, std::vector<std::uint16_t> table,
                        std::vector<std::string> labels) {
    if (order == 0 || table.size() != order * order) throw InvalidSpec("multiplication table has the wrong shape");
    if (order > table_order_cap) throw TooLarge("group order above the table capacity");
    Group g;
    g.spec_ = std::move(spec);
    g.order_ = order;
    g.table_ = std::move(table);
    g.labels_ = std::move(labels);
    const std::size_t n = order;

    for (std::size_t a = 0; a < n; ++a) {
        if (g.table_[a] != a || g.table_[a * n] != a)
            throw InvalidSpec("element 0 is not a two-sided identity in " + g.spec_.to_string());
    }
    // Latin square: every row and column is a permutation.
    std::vector<std::uint32_t> seen(n, 0);
    std::uint32_t stamp = 0;
    for (std::size_t a = 0; a < n; ++a) {
        ++stamp;
        for (std::size_t b = 0; b < n; ++b) {
            auto v = g.table_[a * n + b];
            if (v >= n || seen[v] == stamp) throw InvalidSpec("multiplication table row is not a permutation");
            seen[v] = stamp;
        }
    }
    g.inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < n; ++b)
            if (g.table_[a * n + b] == 0) {
                if (g.table_[b * n + a] != 0) throw InvalidSpec("left and right inverses differ");
                g.inverse_[a] = static_cast<Element>(b);
                found = true;
                break;
            }
        if (!found) throw InvalidSpec("element without inverse");
    }
    auto assoc_ok = [&](std::size_t a, std::size_t b, std::size_t c) {
        return g.table_[g.table_[a * n + b] * n + c] == g.table_[a * n + g.table_[b * n + c]];
    };
    if (n <= exhaustive_associativity_bound) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                const std::size_t ab = g.table_[a * n + b];
                const std::uint16_t* row_b = &g.table_[b * n];
                const std::uint16_t* row_ab = &g.table_[ab * n];
                const std::uint16_t* row_a = &g.table_[a * n];
                for (std::size_t c = 0; c < n; ++c)
                    if (row_ab[c] != row_a[row_b[c]]) throw InvalidSpec("multiplication is not associative");
            }
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::size_t t = 0; t < sampled_associativity_triples; ++t)
            if (!assoc_ok(pick(rng), pick(rng), pick(rng))) throw InvalidSpec("multiplication is not associative");
    }
    g.element_order_.assign(n, 1);
    for (std::size_t a = 1; a < n; ++a) {
        std::size_t k = 1;
        std::size_t x = a;
        while (x != 0) {
            x = g.table_[x * n + a];
            ++k;
        }
        g.element_order_[a] = k;
    }
    g.generators_ = subgroup_generators(g, g.all_elements());
    if (g.labels_.size() != n) {
        g.labels_.clear();
        for (std::size_t a = 0; a < n; ++a) g.labels_.push_back(a == 0 ? "e" : "g" + std::to_string(a));
    }
    return g;
}

std::string Group::label(Element a) const { return a < labels_.size() ? labels_[a] : std::to_string(a); }

bool Group::is_abelian() const {
    for (Element a : generators_)
        for (Element b : generators_)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

Bits Group::all_elements() const {
    Bits b(order_);
    for (std::size_t i = 0; i < order_; ++i) b.set(i);
    return b;
}

Bits Group::trivial_subgroup() const {
    Bits b(order_);
    b.set(identity);
    return b;
}

Bits Group::make_set(std::span<const Element> elems) const {
    Bits b(order_);
    for (Element e : elems) b.set(e);
    return b;
}

// ---------------------------------------------------------------------------

Group build_group(const GroupSpec& spec, const Limits& limits) {
    using namespace family;
    return std::visit(
        [&](const auto& v) -> Group {
            using T = std::decay_t<decltype(v)>;
            const std::string name = spec.to_string();
            if constexpr (std::is_same_v<T, Trivial>) {
                return Group::from_table(spec, 1, {0}, {"e"});
            } else if constexpr (std::is_same_v<T, Cyclic>) {
                if (v.n < 1) throw InvalidSpec("cyclic group needs n >= 1");
                check_order(v.n, limits, name);
                return build_unit_semidirect(spec, v.n, 1, 1, limits);
            } else if constexpr (std::is_same_v<T, Dihedral>) {
                if (v.n <= 2) throw InvalidSpec("dihedral group D_n needs n > 2");
                check_order(2ULL * v.n, limits, name);
                return build_unit_semidirect(spec, v.n, v.n - 1, 2, limits, "r", "s");
            } else if constexpr (std::is_same_v<T, Dicyclic>) {
                if (v.n < 2) throw InvalidSpec("dicyclic group Dic_n needs n >= 2");
                check_order(4ULL * v.n, limits, name);
                return build_dicyclic(spec, v.n, limits);
            } else if constexpr (std::is_same_v<T, Quaternion8>) {
                return build_dicyclic(spec, 2, limits);
            } else if constexpr (std::is_same_v<T, Semidihedral> || std::is_same_v<T, ModularMaximalCyclic>) {
                if (v.n < 4 || v.n > 16) throw InvalidSpec(name + " needs 4 <= n <= 16");
                check_order(1ULL << v.n, limits, name);
                const unsigned half = 1U << (v.n - 1);
                const unsigned quarter = 1U << (v.n - 2);
                const unsigned k = std::is_same_v<T, Semidihedral> ? quarter - 1 : quarter + 1;
                return build_unit_semidirect(spec, half, k, 2, limits, "r", "s");
            } else if constexpr (std::is_same_v<T, Symmetric> || std::is_same_v<T, Alternating>) {
                if (v.n < 1 || v.n > 6) throw InvalidSpec(name + " needs 1 <= n <= 6");
                std::vector<Perm> gens;
                if constexpr (std::is_same_v<T, Symmetric>) {
                    if (v.n >= 2) {
                        gens.push_back(cycle_perm(v.n, {0, 1}));
                        Perm c(v.n);
                        for (unsigned i = 0; i < v.n; ++i) c[i] = static_cast<std::uint16_t>((i + 1) % v.n);
                        gens.push_back(c);
                    }
                } else {
                    for (unsigned k = 2; k < v.n; ++k) gens.push_back(cycle_perm(v.n, {0, 1, k}));
                }
                return build_perm_group(spec, v.n, gens, limits, name);
            } else if constexpr (std::is_same_v<T, SL2>) {
                if (!is_prime(v.p)) throw InvalidSpec("SL2(p) needs p prime");
                check_order(static_cast<std::size_t>(v.p) * (static_cast<std::size_t>(v.p) * v.p - 1), limits, name);
                return build_sl2(spec, v.p, limits);
            } else if constexpr (std::is_same_v<T, AGL1>) {
                if (!is_prime(v.p)) throw InvalidSpec("AGL1(p) needs p prime");
                check_order(static_cast<std::size_t>(v.p) * (v.p - 1), limits, name);
                return build_agl1(spec, v.p, limits);
            } else if constexpr (std::is_same_v<T, Product>) {
                if (!v.left || !v.right) throw InvalidSpec("product with a missing factor");
                const Group a = build_group(*v.left, limits);
                const Group b = build_group(*v.right, limits);
                return build_product(spec, a, b, limits);
            } else if constexpr (std::is_same_v<T, UnitSemidirect>) {
                if (v.n < 1 || v.m < 1) throw InvalidSpec("sd(n,k,m) needs n, m >= 1");
                if (v.k >= v.n && v.n > 1) throw InvalidSpec("sd(n,k,m) needs 0 <= k < n");
                if (std::gcd(v.k, v.n) != 1 && v.n > 1) throw InvalidSpec("sd(n,k,m) needs k a unit mod n");
                if (pow_mod(v.k, v.m, v.n) != 1 % v.n) throw InvalidSpec("sd(n,k,m) needs k^m = 1 mod n");
                check_order(static_cast<std::size_t>(v.n) * v.m, limits, name);
                return build_unit_semidirect(spec, v.n, v.k, v.m, limits);
            } else if constexpr (std::is_same_v<T, VecSemidirect>) {
                if (!is_prime(v.p)) throw InvalidSpec("vsd needs p prime");
                if (v.d < 1 || v.m < 1) throw InvalidSpec("vsd needs d, m >= 1");
                if (v.a.size() != v.d) throw InvalidSpec("vsd matrix must be d x d");
                for (const auto& row : v.a) {
                    if (row.size() != v.d) throw InvalidSpec("vsd matrix must be d x d");
                    for (unsigned x : row)
                        if (x >= v.p) throw InvalidSpec("vsd matrix entries must lie in 0..p-1");
                }
                Matrix pw = mat_identity(v.d);
                for (unsigned j = 0; j < v.m; ++j) pw = mat_mul(pw, v.a, v.p);
                if (pw != mat_identity(v.d)) throw InvalidSpec("vsd needs A^m = I");
                std::size_t order = v.m;
                for (unsigned i = 0; i < v.d; ++i) {
                    order *= v.p;
                    check_order(order, limits, name);
                }
                return build_vec_semidirect(spec, v, limits);
            } else {
                std::vector<Perm> gens;
                for (const auto& img : v.generators) {
                    if (img.size() != v.degree) throw InvalidSpec("permutation has the wrong length");
                    std::vector<bool> hit(v.degree, false);
                    Perm p(v.degree);
                    for (std::size_t i = 0; i < img.size(); ++i) {
                        if (img[i] >= v.degree || hit[img[i]]) throw InvalidSpec("generator is not a permutation");
                        hit[img[i]] = true;
                        p[i] = static_cast<std::uint16_t>(img[i]);
                    }
                    gens.push_back(std::move(p));
                }
                return build_perm_group(spec, v.degree, gens, limits, name);
            }
        },
        spec.value());
}

// ---------------------------------------------------------------------------

Bits generated_subgroup(const Group& g, std::span<const Element> gens) {
    Bits set(g.order());
    std::vector<Element> list{Group::identity};
    set.set(Group::identity);
    for (std::size_t i = 0; i < list.size(); ++i)
        for (Element s : gens) {
            const Element y = g.mul(list[i], s);
            if (set.insert(y)) list.push_back(y);
        }
    return set;
}

Bits generated_subgroup(const Group& g, const Bits& gens) {
    std::vector<Element> v;
    gens.for_each([&](std::size_t i) { v.push_back(static_cast<Element>(i)); });
    return generated_subgroup(g, v);
}

Bits conjugate_set(const Group& g, const Bits& s, Element by) {
    Bits out(g.order());
    s.for_each([&](std::size_t x) { out.set(g.conj(by, static_cast<Element>(x))); });
    return out;
}

bool is_subgroup(const Group& g, const Bits& s) {
    if (s.size() != g.order() || !s.test(Group::identity)) return false;
    const auto elems = s.to_indices();
    for (auto a : elems)
        for (auto b : elems)
            if (!s.test(g.mul(static_cast<Element>(a), static_cast<Element>(b)))) return false;
    return true;
}

void require_subgroup(const Group& g, const Bits& s) {
    if (!is_subgroup(g, s)) throw NotASubgroup("element set is not a subgroup of " + g.spec().to_string());
}

std::vector<Element> subgroup_generators(const Group& g, const Bits& s) {
    std::vector<Element> elems;
    s.for_each([&](std::size_t i) { elems.push_back(static_cast<Element>(i)); });
    std::stable_sort(elems.begin(), elems.end(),
                     [&](Element a, Element b) { return g.element_order(a) > g.element_order(b); });
    std::vector<Element> gens;
    Bits current = g.trivial_subgroup();
    const std::size_t target = s.count();
    for (Element x : elems) {
        if (current.count() == target) break;
        if (current.test(x)) continue;
        gens.push_back(x);
        current = generated_subgroup(g, gens);
    }
    return gens;
}

Bits normalizer(const Group& g, const Bits& s) {
    require_subgroup(g, s);
    const auto gens = subgroup_generators(g, s);
    Bits out(g.order());
    for (Element x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (Element y : gens)
            if (!s.test(g.conj(x, y))) {
                ok = false;
                break;
            }
        if (ok) out.set(x);
    }
    return out;
}

Bits centralizer(const Group& g, const Bits& s) {
    require_subgroup(g, s);
    const auto gens = subgroup_generators(g, s);
    Bits out(g.order());
    for (Element x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (Element y : gens)
            if (g.mul(x, y) != g.mul(y, x)) {
                ok = false;
                break;
            }
        if (ok) out.set(x);
    }
    return out;
}

Bits center(const Group& g) { return centralizer(g, g.all_elements()); }

Bits normal_closure(const Group& g, const Bits& k, const Bits& h) {
    if (!k.is_subset_of(h)) throw NotASubgroup("normal closure needs K contained in H");
    require_subgroup(g, h);
    const auto h_gens = subgroup_generators(g, h);
    std::vector<Element> gens = subgroup_generators(g, generated_subgroup(g, k));
    Bits current = generated_subgroup(g, gens);
    bool grew = true;
    while (grew) {
        grew = false;
        const auto snapshot = gens;
        for (Element x : h_gens) {
            for (Element y : snapshot) {
                const Element c = g.conj(x, y);
                if (!current.test(c)) {
                    gens.push_back(c);
                    current = generated_subgroup(g, gens);
                    grew = true;
                }
            }
        }
    }
    return current;
}

bool is_normal_in(const Group& g, const Bits& k, const Bits& h) {
    if (!k.is_subset_of(h)) return false;
    const auto k_gens = subgroup_generators(g, k);
    for (Element x : subgroup_generators(g, h))
        for (Element y : k_gens)
            if (!k.test(g.conj(x, y))) return false;
    return true;
}

Bits derived_subgroup_of(const Group& g, const Bits& h) {
    const auto gens = subgroup_generators(g, h);
    std::vector<Element> comms;
    for (Element a : gens)
        for (Element b : gens) comms.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    return normal_closure(g, generated_subgroup(g, comms), h);
}

Bits derived_subgroup(const Group& g) { return derived_subgroup_of(g, g.all_elements()); }

bool is_solvable(const Group& g) {
    Bits current = g.all_elements();
    while (current.count() > 1) {
        Bits next = derived_subgroup_of(g, current);
        if (next == current) return false;
        current = std::move(next);
    }
    return true;
}

EmbeddedGroup subgroup_as_group(const Group& g, const Bits& s) {
    require_subgroup(g, s);
    std::vector<Element> to_parent;
    s.for_each([&](std::size_t i) { to_parent.push_back(static_cast<Element>(i)); });
    const std::size_t n = to_parent.size();
    std::vector<std::uint32_t> local(g.order(), 0);
    for (std::size_t i = 0; i < n; ++i) local[to_parent[i]] = static_cast<std::uint32_t>(i);
    std::vector<std::uint16_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            table[a * n + b] = static_cast<std::uint16_t>(local[g.mul(to_parent[a], to_parent[b])]);
    std::vector<std::string> labels;
    for (Element e : to_parent) labels.push_back(g.label(e));
    // Left-regular permutation representation of a generating set as the spec.
    family::PermGens pg{static_cast<unsigned>(n), {}, {}};
    for (Element x : subgroup_generators(g, s)) {
        std::vector<unsigned> img(n);
        for (std::size_t i = 0; i < n; ++i) img[i] = local[g.mul(x, to_parent[i])];
        pg.generators.push_back(std::move(img));
    }
    return {Group::from_table(GroupSpec{pg}, n, std::move(table), std::move(labels)), std::move(to_parent)};
}

QuotientGroup quotient_group(const Group& g, const Bits& normal) {
    if (!is_normal_in(g, normal, g.all_elements()) || !is_subgroup(g, normal))
        throw NotNormal("quotient needs a normal subgroup");
    const std::size_t n = g.order();
    constexpr Element unset = ~Element{0};
    std::vector<Element> coset_of(n, unset);
    std::vector<Element> reps;
    const auto nelems = normal.to_indices();
    for (Element x = 0; x < n; ++x) {
        if (coset_of[x] != unset) continue;
        const auto c = static_cast<Element>(reps.size());
        reps.push_back(x);
        for (auto y : nelems) coset_of[g.mul(x, static_cast<Element>(y))] = c;
    }
    const std::size_t q = reps.size();
    std::vector<std::uint16_t> table(q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            table[a * q + b] = static_cast<std::uint16_t>(coset_of[g.mul(reps[a], reps[b])]);
    std::vector<std::string> labels;
    for (Element r : reps) labels.push_back(g.label(r) + "N");
    family::PermGens pg{static_cast<unsigned>(q), {}, {}};
    for (Element x : g.generators()) {
        std::vector<unsigned> img(q);
        for (std::size_t i = 0; i < q; ++i) img[i] = coset_of[g.mul(x, reps[i])];
        pg.generators.push_back(std::move(img));
    }
    return {Group::from_table(GroupSpec{pg}, q, std::move(table), std::move(labels)), std::move(coset_of)};
}

std::vector<std::size_t> order_profile(const Group& g) {
    auto v = g.element_orders();
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<std::size_t> order_profile(const Group& g, const Bits& s) {
    std::vector<std::size_t> v;
    s.for_each([&](std::size_t i) { v.push_back(g.element_order(static_cast<Element>(i))); });
    std::sort(v.begin(), v.end());
    return v;
}

namespace {

class IsomorphismSearch {
  public:
    IsomorphismSearch(const Group& a, const Group& b) : a_{a}, b_{b}, gens_{a.generators()} {
        // Breadth-first words over the generators of `a`: element = parent * gens_[via].
        const std::size_t n = a.order();
        parent_.assign(n, 0);
        via_.assign(n, 0);
        std::vector<bool> seen(n, false);
        order_.push_back(Group::identity);
        seen[0] = true;
        for (std::size_t i = 0; i < order_.size(); ++i)
            for (std::size_t k = 0; k < gens_.size(); ++k) {
                const Element y = a.mul(order_[i], gens_[k]);
                if (!seen[y]) {
                    seen[y] = true;
                    parent_[y] = order_[i];
                    via_[y] = k;
                    order_.push_back(y);
                }
            }
        images_.assign(gens_.size(), 0);
    }

    bool run() { return assign(0); }

  private:
    bool assign(std::size_t k) {
        if (k == gens_.size()) return verify();
        const std::size_t want = a_.element_order(gens_[k]);
        for (Element h = 0; h < b_.order(); ++h) {
            if (b_.element_order(h) != want) continue;
            images_[k] = h;
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i) {
                if (a_.element_order(a_.mul(gens_[i], gens_[k])) != b_.element_order(b_.mul(images_[i], h)))
                    ok = false;
                else if (a_.element_order(a_.mul(gens_[k], a_.inv(gens_[i]))) !=
                         b_.element_order(b_.mul(h, b_.inv(images_[i]))))
                    ok = false;
            }
            if (ok && assign(k + 1)) return true;
        }
        return false;
    }

    bool verify() {
        const std::size_t n = a_.order();
        std::vector<Element> f(n, 0);
        std::vector<bool> used(n, false);
        used[0] = true;
        for (std::size_t i = 1; i < order_.size(); ++i) {
            const Element x = order_[i];
            const Element y = b_.mul(f[parent_[x]], images_[via_[x]]);
            if (used[y]) return false;
            used[y] = true;
            f[x] = y;
        }
        for (Element x = 0; x < n; ++x)
            for (std::size_t k = 0; k < gens_.size(); ++k)
                if (f[a_.mul(x, gens_[k])] != b_.mul(f[x], images_[k])) return false;
        return true;
    }

    const Group& a_;
    const Group& b_;
    std::vector<Element> gens_;
    std::vector<Element> order_;
    std::vector<Element> parent_;
    std::vector<std::size_t> via_;
    std::vector<Element> images_;
};

} // namespace

bool is_isomorphic(const Group& a, const Group& b, const Limits& limits) {
    if (a.order() > limits.max_isomorphism_order || b.order() > limits.max_isomorphism_order)
        throw TooLarge("isomorphism test is bounded to order " + std::to_string(limits.max_isomorphism_order));
    if (a.order() != b.order()) return false;
    if (order_profile(a) != order_profile(b)) return false;
    if (a.is_abelian() != b.is_abelian()) return false;
    return IsomorphismSearch(a, b).run();
}

} // namespace normlift
