#pragma once

#include <stdexcept>
#include <string>

namespace noma {

/// Bad argument or configuration value.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two composite points coincide, so the superposed signal cannot be resolved.
class DegenerateConstellationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Point set is not a Cartesian grid; square decision regions do not exist.
class NonRectangularRegionsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SymmetryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CostGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace noma
