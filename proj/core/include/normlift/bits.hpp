#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace normlift {

/// Fixed-length bit-string with word-parallel set operations.
///
/// Used for element sets of a group, for rows of containment matrices and
/// for relation rows. The length is fixed at construction; binary
/// operations require equal lengths.
class Bits {
  public:
    using Word = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Bits() = default;
    explicit Bits(std::size_t size) : size_{size}, words_((size + word_bits - 1) / word_bits, 0) {}

    [[nodiscard]] std::size_t size() const { return size_; }

    [[nodiscard]] bool test(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1U; }
    void set(std::size_t i) { words_[i / word_bits] |= Word{1} << (i % word_bits); }
    void reset(std::size_t i) { words_[i / word_bits] &= ~(Word{1} << (i % word_bits)); }

    /// Sets bit i and reports whether it was previously clear.
    bool insert(std::size_t i) {
        Word& w = words_[i / word_bits];
        const Word mask = Word{1} << (i % word_bits);
        const bool fresh = (w & mask) == 0;
        w |= mask;
        return fresh;
    }

    [[nodiscard]] std::size_t count() const {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    [[nodiscard]] bool none() const {
        for (Word w : words_)
            if (w != 0) return false;
        return true;
    }
    [[nodiscard]] bool any() const { return !none(); }

    /// this ⊆ other
    [[nodiscard]] bool is_subset_of(const Bits& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if ((words_[k] & ~other.words_[k]) != 0) return false;
        return true;
    }

    [[nodiscard]] bool intersects(const Bits& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if ((words_[k] & other.words_[k]) != 0) return true;
        return false;
    }

    Bits& operator|=(const Bits& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    Bits& operator&=(const Bits& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    /// Set difference.
    Bits& operator-=(const Bits& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }

    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator-(Bits a, const Bits& b) { return a -= b; }

    friend bool operator==(const Bits& a, const Bits& b) = default;

    /// Lexicographic order on the bit-string b_0 b_1 ... b_{n-1} with 0 < 1.
    [[nodiscard]] bool lex_less(const Bits& other) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            const Word diff = words_[k] ^ other.words_[k];
            if (diff != 0) {
                const auto low = static_cast<std::size_t>(std::countr_zero(diff));
                return ((other.words_[k] >> low) & 1U) != 0;
            }
        }
        return false;
    }

    /// Index of the first set bit at or after `from`, or size() if none.
    [[nodiscard]] std::size_t find_next(std::size_t from) const {
        if (from >= size_) return size_;
        std::size_t k = from / word_bits;
        Word w = words_[k] & (~Word{0} << (from % word_bits));
        while (true) {
            if (w != 0) {
                const std::size_t i = k * word_bits + static_cast<std::size_t>(std::countr_zero(w));
                return i < size_ ? i : size_;
            }
            if (++k == words_.size()) return size_;
            w = words_[k];
        }
    }
    [[nodiscard]] std::size_t find_first() const { return find_next(0); }

    /// Index of the highest set bit, or size() if none.
    [[nodiscard]] std::size_t find_last() const {
        for (std::size_t k = words_.size(); k-- > 0;) {
            if (words_[k] != 0)
                return k * word_bits + (word_bits - 1 - static_cast<std::size_t>(std::countl_zero(words_[k])));
        }
        return size_;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            Word w = words_[k];
            while (w != 0) {
                const auto low = static_cast<std::size_t>(std::countr_zero(w));
                f(k * word_bits + low);
                w &= w - 1;
            }
        }
    }

    [[nodiscard]] std::vector<std::size_t> to_indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    [[nodiscard]] const std::vector<Word>& words() const { return words_; }

    [[nodiscard]] std::size_t hash() const {
        std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
        for (Word w : words_) h = (h ^ static_cast<std::size_t>(w)) * 0x100000001b3ULL + (h >> 29);
        return h;
    }

  private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return b.hash(); }
};

} // namespace normlift
