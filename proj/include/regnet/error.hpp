#pragma once

#include <stdexcept>
#include <string>

namespace regnet {

// Invalid parameters or inputs outside an operation's domain (CLI exit 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Structural preconditions that the input graph/network does not satisfy,
// e.g. an odd cycle where a bipartite graph is required.
class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

// File system failures (CLI exit 2).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace regnet
