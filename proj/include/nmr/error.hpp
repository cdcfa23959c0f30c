#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nmr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input, violated precondition or unknown name.
class InputError : public Error {
public:
    using Error::Error;
};

// A configured enumeration cap would be exceeded. The message names the cap.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& cap, std::size_t limit, std::size_t requested)
        : Error(cap + " cap exceeded: requested " + std::to_string(requested) + ", limit " +
                std::to_string(limit)),
          cap_(cap), limit_(limit), requested_(requested) {}

    const std::string& cap() const { return cap_; }
    std::size_t limit() const { return limit_; }
    std::size_t requested() const { return requested_; }

private:
    std::string cap_;
    std::size_t limit_;
    std::size_t requested_;
};

struct Limits {
    std::size_t max_vars = 22;        // model enumeration
    std::size_t max_defaults = 8;     // process search
    std::size_t max_background = 12;  // subset search over background clauses
    std::size_t max_qbf_vars = 16;    // full QBF expansion

    void check_vars(std::size_t n) const {
        if (n > max_vars) throw CapExceeded("max-vars", max_vars, n);
    }
    void check_defaults(std::size_t n) const {
        if (n > max_defaults) throw CapExceeded("max-defaults", max_defaults, n);
    }
    void check_background(std::size_t n) const {
        if (n > max_background) throw CapExceeded("max-background", max_background, n);
    }
    void check_qbf_vars(std::size_t n) const {
        if (n > max_qbf_vars) throw CapExceeded("max-qbf-vars", max_qbf_vars, n);
    }
};

}  // namespace nmr
