#pragma once

#include <stdexcept>
#include <string>

namespace blocktype {

/// Element is malformed for the requested algebra (e.g. central component
/// present in the non-extended algebra).
struct invalid_element_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// min_term on the zero element or a pure-central element.
struct no_minimal_term_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Window/core pair too small for the requested solve.
struct window_too_small_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Caller violated a stated precondition (e.g. normalizing a non-cocycle).
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Internal consistency failure; signals a bug, not a math outcome.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace blocktype
