#pragma once

#include <stdexcept>

namespace nehari {

/// A solver failed to produce a usable result (bad bracket, iteration cap).
struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterates left the representable regime (NaN or runaway amplitude).
struct BlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nehari
