#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bls {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPiOverSqrt3 = 3.6275987284684357;

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Precondition violations: poles, branch points, coincident points,
/// cutoff violations, charge conservation.  The message names the
/// violated precondition.
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

/// A series or transformation failed to converge within the iteration budget.
struct convergence_error : error {
    explicit convergence_error(const std::string& msg) : error(msg) {}
};

/// Singular Gram matrix at a given level (degenerate Virasoro representation).
struct null_state_error : error {
    int level;
    double central_charge;
    int p = -1, p_prime = -1;  // set when raised during table extraction
    null_state_error(const std::string& msg, int lvl, double c)
        : error(msg), level(lvl), central_charge(c) {}
};

/// Invalid Monte Carlo or CLI configuration.
struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg) {}
};

}  // namespace bls
