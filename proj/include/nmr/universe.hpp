#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nmr/error.hpp"
#include "nmr/formula.hpp"

namespace nmr {

// Ordered, duplicate-free set of variable names. The order fixes the
// lexicographic order of models.
class Universe {
public:
    Universe() = default;
    Universe(std::initializer_list<std::string> names) {
        for (const auto& n : names) add(n);
    }
    explicit Universe(const std::vector<std::string>& names) {
        for (const auto& n : names) add(n);
    }

    template <typename... Ts>
    static Universe of(const Ts&... parts) {
        Universe u;
        (u.add_all(variables(parts)), ...);
        return u;
    }

    bool add(const std::string& name) {
        if (contains(name)) return false;
        index_.emplace(name, names_.size());
        names_.push_back(name);
        return true;
    }
    void add_all(const std::vector<std::string>& names) {
        for (const auto& n : names) add(n);
    }
    Universe extended(const std::vector<std::string>& names) const {
        Universe u = *this;
        u.add_all(names);
        return u;
    }

    bool contains(const std::string& name) const { return index_.count(name) != 0; }
    std::optional<std::size_t> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index_of(const std::string& name) const {
        auto i = find(name);
        if (!i) throw InputError("unknown variable '" + name + "'");
        return *i;
    }

    // Throws unless every variable of f is in the universe.
    template <typename T>
    void require_covers(const T& f) const {
        for (const auto& v : variables(f)) index_of(v);
    }

    const std::vector<std::string>& names() const { return names_; }
    const std::string& operator[](std::size_t i) const { return names_[i]; }
    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }

    bool operator==(const Universe& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace nmr
