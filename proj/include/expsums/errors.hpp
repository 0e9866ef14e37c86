#ifndef EXPSUMS_ERRORS_HPP
#define EXPSUMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace expsums {

// Thrown when a requested table or range exceeds a configured ceiling.
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or truncated on-disk data.  Carries the offending path/line in
// the message.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A root-finding or inversion target lies outside the range of the map.
struct no_solution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal partition/regrouping invariant was violated.  This is a bug
// trap, never an input error.
struct internal_consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

// The phase handed to a stationary-phase bound has a vanishing derivative
// of the requested order.
struct degenerate_phase_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace expsums

#endif
