#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ionnoise {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of the model (negative spectrum, n0 == m0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Unbounded Mathieu motion or parameters beyond the configured guard.
class StabilityError : public Error {
public:
    using Error::Error;
};

// Zigzag or other loss of linear-chain stability.
class StructuralInstabilityError : public Error {
public:
    using Error::Error;
};

// Iterative solve hit its iteration limit or a recursion failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double achieved)
        : Error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

// Bad user data handed to a fit or estimator.
class InputError : public Error {
public:
    using Error::Error;
};

// Red sideband at least as strong as blue: the thermal-state assumption is broken.
class NonThermalStateError : public DomainError {
public:
    using DomainError::DomainError;
};

class EstimationError : public Error {
public:
    using Error::Error;
};

// Configuration or dataset rejected; carries every violation found.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> v)
        : Error(join(v)), violations(std::move(v)) {}
    std::vector<std::string> violations;

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) {
            if (!s.empty()) s += "; ";
            s += x;
        }
        return s;
    }
};

}  // namespace ionnoise
