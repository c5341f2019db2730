#ifndef DROPLETLAB_ERRORS_HPP
#define DROPLETLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dropletlab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition on user-supplied input was violated. The message names
/// the violated constraint.
class InvalidInput : public Error {
public:
    explicit InvalidInput(const std::string& what) : Error(what) {}
};

/// Kernel exponent outside the integrable range (s >= d, or p >= d).
class DivergentIntegral : public Error {
public:
    explicit DivergentIntegral(const std::string& what) : Error(what) {}
};

/// The requested evaluation method does not support the given geometry
/// (e.g. deterministic quadrature asked for overlapping balls).
class MethodUnsupported : public Error {
public:
    explicit MethodUnsupported(const std::string& what) : Error(what) {}
};

/// A point configuration has coincident points or a point at the anchor.
/// Carries the offending pair of indices (anchor is index 0).
class DegenerateConfiguration : public Error {
public:
    DegenerateConfiguration(const std::string& what, int index_a, int index_b)
        : Error(what), index_a_(index_a), index_b_(index_b) {}
    int index_a() const noexcept { return index_a_; }
    int index_b() const noexcept { return index_b_; }

private:
    int index_a_;
    int index_b_;
};

/// A droplet configuration violates a geometric requirement (overlap).
class InvalidConfiguration : public Error {
public:
    explicit InvalidConfiguration(const std::string& what) : Error(what) {}
};

/// A bisection bracket did not contain a sign change.
class BracketFailure : public Error {
public:
    explicit BracketFailure(const std::string& what) : Error(what) {}
};

/// Every multistart attempt diverged or hit a degenerate configuration.
class OptimizationFailed : public Error {
public:
    explicit OptimizationFailed(const std::string& what) : Error(what) {}
};

} // namespace dropletlab

#endif
