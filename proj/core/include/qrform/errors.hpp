#pragma once

#include <stdexcept>
#include <string>

namespace qrform {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero in Q(t)") {}
};

// Singular system; carries the rank found during elimination.
class SingularMatrix : public Error {
public:
    explicit SingularMatrix(long rank)
        : Error("singular matrix, rank " + std::to_string(rank)), rank_found(rank) {}
    long rank_found;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class InadmissibleParam : public Error {
public:
    using Error::Error;
};

class ResourceBound : public Error {
public:
    using Error::Error;
};

// Construction-time identity suite failure (indicates a transcription bug).
class ConstructionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace qrform
