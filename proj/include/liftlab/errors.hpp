#pragma once

#include <stdexcept>
#include <string>

namespace liftlab {

// Exit-code taxonomy shared by the library and the CLI:
//   0 success, 1 I/O or parse error, 2 resource-guard violation,
//   3 structured algorithmic failure.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct GuardError : std::runtime_error {
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace liftlab
