#ifndef OECS_ERRORS_HPP
#define OECS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace oecs {

// Bad run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Rejected input data: shape mismatch, non-monotone times, non-finite samples
// (CLI exit code 3).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Query outside the spatial grid or the time span.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Query outside U_mu (eigenvalue spread zero or mu outside [s1, s2]).
// Distinct from DomainError so callers can tell "left the grid" from
// "left the region where the direction field exists".
class OutsideUmuError : public std::runtime_error {
public:
    explicit OutsideUmuError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical degeneracy that invalidates a result (CLI exit code 4 when it
// aborts a whole run): non-hyperbolic cycle, singular frame denominator.
class NumericalDegeneracy : public std::runtime_error {
public:
    explicit NumericalDegeneracy(const std::string& what) : std::runtime_error(what) {}
};

class DegenerateCycleError : public NumericalDegeneracy {
public:
    explicit DegenerateCycleError(const std::string& what) : NumericalDegeneracy(what) {}
};

class SingularDenominatorError : public NumericalDegeneracy {
public:
    explicit SingularDenominatorError(const std::string& what) : NumericalDegeneracy(what) {}
};

// Backward time differencing asked for history before the first snapshot.
class InsufficientHistoryError : public DomainError {
public:
    explicit InsufficientHistoryError(const std::string& what) : DomainError(what) {}
};

} // namespace oecs

#endif
