#pragma once

#include <stdexcept>
#include <string>

namespace mu2amp {

/// Raised when a Fock-space truncation is too small for the requested
/// computation (populated amplitude near the top of the basis).
class CutoffInsufficient : public std::runtime_error {
public:
    explicit CutoffInsufficient(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for parameter sets outside the physical domain (G < 1, negative
/// noise, ...).
class InvalidSpec : public std::invalid_argument {
public:
    explicit InvalidSpec(const std::string& what) : std::invalid_argument(what) {}
};

/// Normal ordering (s = +1) makes the input SNR singular; callers must ask
/// for s < 1.
class SingularOrdering : public std::domain_error {
public:
    explicit SingularOrdering(const std::string& what) : std::domain_error(what) {}
};

} // namespace mu2amp
