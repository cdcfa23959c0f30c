#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmr/universe.hpp"

namespace nmr {

// A truth assignment over a universe of n variables, stored as an index in
// [0, 2^n). Variable i of the universe is bit n-1-i, so comparing indices
// compares assignments lexicographically in universe order with false < true.
struct Model {
    std::uint32_t bits = 0;

    auto operator<=>(const Model&) const = default;
    bool subset_of(Model o) const { return (bits & ~o.bits) == 0; }
};

inline std::uint32_t var_bit(std::size_t var_index, std::size_t n) {
    return std::uint32_t{1} << (n - 1 - var_index);
}

inline bool holds(Model m, std::size_t var_index, std::size_t n) { return (m.bits & var_bit(var_index, n)) != 0; }

// Names of the true variables, in universe order.
inline std::vector<std::string> true_vars(Model m, const Universe& u) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (holds(m, i, u.size())) out.push_back(u[i]);
    return out;
}

inline Model model_of(const std::vector<std::string>& true_names, const Universe& u) {
    Model m;
    for (const auto& v : true_names) m.bits |= var_bit(u.index_of(v), u.size());
    return m;
}

// A set of models over a fixed number of variables, as a bitset indexed by
// assignment. Iteration yields models in ascending (lexicographic) order.
class ModelSet {
public:
    ModelSet() : ModelSet(0) {}
    explicit ModelSet(std::size_t nvars) : nvars_(nvars), words_(word_count(nvars), 0) {}

    static ModelSet none(std::size_t nvars) { return ModelSet(nvars); }
    static ModelSet all(std::size_t nvars) {
        ModelSet s(nvars);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }
    // Models in which variable var_index is true.
    static ModelSet variable(std::size_t nvars, std::size_t var_index) {
        ModelSet s(nvars);
        const std::size_t b = nvars - 1 - var_index;
        if (b < 6) {
            const std::uint64_t pat = in_word_pattern(b);
            for (auto& w : s.words_) w = pat;
        } else {
            for (std::size_t i = 0; i < s.words_.size(); ++i)
                if (i >> (b - 6) & 1U) s.words_[i] = ~std::uint64_t{0};
        }
        s.trim();
        return s;
    }

    std::size_t nvars() const { return nvars_; }
    std::size_t capacity() const { return std::size_t{1} << nvars_; }

    bool contains(Model m) const { return (words_[m.bits >> 6] >> (m.bits & 63) & 1U) != 0; }
    void insert(Model m) { words_[m.bits >> 6] |= std::uint64_t{1} << (m.bits & 63); }
    void erase(Model m) { words_[m.bits >> 6] &= ~(std::uint64_t{1} << (m.bits & 63)); }

    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }
    std::size_t size() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool subset_of(const ModelSet& o) const {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const ModelSet& o) const {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    // Whether this ∩ a ∩ b is non-empty, without allocating.
    bool intersects(const ModelSet& a, const ModelSet& b) const {
        check_same(a);
        check_same(b);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & a.words_[i] & b.words_[i]) return true;
        return false;
    }

    ModelSet& operator&=(const ModelSet& o) {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    ModelSet& operator|=(const ModelSet& o) {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    ModelSet& subtract(const ModelSet& o) {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend ModelSet operator&(ModelSet a, const ModelSet& b) { return a &= b; }
    friend ModelSet operator|(ModelSet a, const ModelSet& b) { return a |= b; }
    friend ModelSet operator-(ModelSet a, const ModelSet& b) { return a.subtract(b); }
    ModelSet operator~() const {
        ModelSet r(nvars_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.trim();
        return r;
    }
    bool operator==(const ModelSet& o) const { return nvars_ == o.nvars_ && words_ == o.words_; }

    std::optional<Model> first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return Model{static_cast<std::uint32_t>(i * 64 + std::countr_zero(words_[i]))};
        return std::nullopt;
    }
    std::vector<Model> models() const {
        std::vector<Model> out;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                out.push_back(Model{static_cast<std::uint32_t>(i * 64 + std::countr_zero(w))});
                w &= w - 1;
            }
        }
        return out;
    }

    // {m | some member of this set is a subset of m}.
    ModelSet upward_closure() const {
        ModelSet r = *this;
        for (std::size_t b = 0; b < nvars_; ++b) r |= r.shift_up(b);
        return r;
    }
    // {m | some member of this set is a proper subset of m}.
    ModelSet strictly_above() const {
        ModelSet up = upward_closure();
        ModelSet r(nvars_);
        for (std::size_t b = 0; b < nvars_; ++b) r |= up.shift_up(b);
        return r;
    }
    // Members with no proper subset in the set.
    ModelSet minimal_elements() const { return *this - strictly_above(); }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    static std::size_t word_count(std::size_t nvars) { return nvars <= 6 ? 1 : std::size_t{1} << (nvars - 6); }
    static std::uint64_t in_word_pattern(std::size_t b) {
        static constexpr std::uint64_t pats[6] = {0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
                                                  0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL};
        return pats[b];
    }
    void trim() {
        if (nvars_ < 6) words_[0] &= (std::uint64_t{1} << (std::size_t{1} << nvars_)) - 1;
    }
    void check_same([[maybe_unused]] const ModelSet& o) const { assert(nvars_ == o.nvars_); }

    // {m ∪ {bit b} | m ∈ this, bit b not in m}.
    ModelSet shift_up(std::size_t b) const {
        ModelSet r(nvars_);
        if (b < 6) {
            const std::uint64_t pat = in_word_pattern(b);
            const std::size_t s = std::size_t{1} << b;
            for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = (words_[i] & ~pat) << s;
            r.trim();
        } else {
            const std::size_t s = std::size_t{1} << (b - 6);
            for (std::size_t i = 0; i < words_.size(); ++i)
                if (i & s) r.words_[i] = words_[i ^ s];
        }
        return r;
    }

    std::size_t nvars_;
    std::vector<std::uint64_t> words_;
};

}  // namespace nmr
