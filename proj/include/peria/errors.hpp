#ifndef PERIA_ERRORS_HPP
#define PERIA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace peria {

/// Invalid input data: bad syntax, violated invariants, unmet preconditions.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured bound (closure size, ball memory, precision) was exhausted.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Syntax error in a text input, with 1-based line number.
struct parse_error : domain_error {
    int line;
    parse_error(int line_, const std::string& msg)
        : domain_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

} // namespace peria

#endif
