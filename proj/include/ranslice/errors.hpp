#pragma once

#include <stdexcept>
#include <string>

namespace ranslice {

// Invalid or inconsistent run configuration. Raised before any simulation step.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke a documented precondition (empty window, mismatched slice kind, ...).
class contract_error : public std::runtime_error {
public:
    explicit contract_error(const std::string& what) : std::runtime_error(what) {}
};

// Operator intent text that does not match the grammar. Carries the character
// offset of the offending token.
class intent_parse_error : public std::runtime_error {
public:
    intent_parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// IO failure on export / checkpoint paths.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ranslice
