#pragma once

#include <stdexcept>
#include <string>

namespace sqjc {

// Invalid argument or parameter outside its documented domain.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Root/minimum search could not be completed (bad bracket, non-finite values).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Requested tail mass could not be certified within the hard cutoff cap.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sqjc
