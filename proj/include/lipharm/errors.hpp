#pragma once

#include <stdexcept>
#include <string>

namespace lipharm {

// Query outside the extent of a tabulated graph.
struct extent_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Requested evaluation cannot meet the advertised accuracy
// (e.g. Poisson quadrature asked too close to the boundary).
struct accuracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation not defined for this field kind (e.g. gradients of
// stochastic fields).
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A quadrature node landed on the boundary, where the weight
// d^(alpha-1) is not evaluatable.
struct nonintegrable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-range scenario configuration.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lipharm
