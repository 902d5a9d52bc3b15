#pragma once

#include <stdexcept>
#include <string>

namespace foliage {

/// Bad user data: malformed documents, violated preconditions, rejected structures.
/// The CLI maps it to exit code 1.
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An identity that must hold by construction failed (e.g. Killing vs L_xi phi
/// disagreement, Hodge dimension mismatch). The CLI maps it to exit code 2.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace foliage
