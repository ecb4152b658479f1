#pragma once

#include <stdexcept>

namespace stf {

// Error categories the CLI maps onto its exit-code contract
// (parse -> 2, argument -> 3, precondition -> 4).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace stf
