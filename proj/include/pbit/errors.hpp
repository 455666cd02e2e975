#pragma once

#include <stdexcept>

namespace pbit {

// Malformed input files (JSON, DIMACS, CSV, PGM). CLI maps these to exit 3.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Size/resource guards (enumeration limits, ED dimension). CLI maps to exit 4.
struct guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pbit
