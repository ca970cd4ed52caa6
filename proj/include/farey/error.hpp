#pragma once

#include <stdexcept>
#include <string>

namespace farey {

/// Precondition on an input value violated (out of range, wrong ordering, ...).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Input is well formed but left < right was required.
class ordering_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// Request exceeds a configured size cap.
class resource_error : public std::length_error {
public:
    using std::length_error::length_error;
};

/// An iterative method failed to converge or to bracket its root.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested truncation is too short to honour the advertised accuracy.
class precision_error : public domain_error {
public:
    using domain_error::domain_error;
};

}  // namespace farey
