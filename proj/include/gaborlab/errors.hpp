#pragma once

#include <stdexcept>
#include <string>

namespace gaborlab {

// Precondition violations (mismatched groups, bad generators, ...).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Requested problem exceeds the configured size cap.
class ResourceLimit : public std::runtime_error {
public:
    explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

// A solve or inversion hit a numerically singular operator.
// Carries the smallest eigenvalue seen so callers can report it.
class SingularOperator : public std::runtime_error {
public:
    SingularOperator(const std::string& what, double lambda_min)
        : std::runtime_error(what), lambda_min(lambda_min) {}
    double lambda_min;
};

// A constructive procedure (e.g. a window design) failed its own postcondition.
class ConstructionFailed : public std::runtime_error {
public:
    explicit ConstructionFailed(const std::string& what) : std::runtime_error(what) {}
};

// File could not be read or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gaborlab
