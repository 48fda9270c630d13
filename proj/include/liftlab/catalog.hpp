#pragma once

#include <string>

#include "liftlab/boolfn.hpp"

namespace liftlab {

/// Named functions on {1..n}, in the +-1 convention where the Boolean value 1
/// maps to -1:
///   parity:n  chi_{[n]}
///   or:n      -1 unless all inputs are 0
///   and:n     -1 only when all inputs are 1
///   readonce:<formula>, e.g. readonce:AND(x1,OR(x2,NOT(x3)))
/// Anything else is treated as a path to a truth-table JSON file
/// {"coords": [labels], "values": [entries in point-index order]}.
BooleanFunction parse_function_spec(const std::string& spec);

BooleanFunction function_from_json_text(const std::string& text);
BooleanFunction function_from_json_file(const std::string& path);
std::string function_to_json_text(const BooleanFunction& f);

}  // namespace liftlab
