#pragma once

// Access to the fixture corpus compiled into the binary.

#include <string>

#include "nmr/nmr.hpp"
#include "nmr_fixtures_embedded.hpp"

namespace fixtures {

inline std::string text(const std::string& name) {
    for (const auto& f : nmr::cli::embedded_fixtures())
        if (f.name == name) return std::string(f.text);
    throw nmr::InputError("no fixture named '" + name + "'");
}

inline nmr::DefaultTheory theory(const std::string& stem) { return nmr::parse_theory(text(stem + ".thy")); }

inline std::vector<std::string> theory_names() {
    std::vector<std::string> out;
    for (const auto& f : nmr::cli::embedded_fixtures()) {
        std::string n(f.name);
        if (n.size() > 4 && n.compare(n.size() - 4, 4, ".thy") == 0) out.push_back(n.substr(0, n.size() - 4));
    }
    return out;
}

}  // namespace fixtures
