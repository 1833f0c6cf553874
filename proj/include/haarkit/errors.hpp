#pragma once

#include <stdexcept>
#include <string>

namespace haarkit {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A composition table fails one of the group axioms.
struct NotAGroup : Error {
    explicit NotAGroup(const std::string& why, int i = -1, int j = -1, int k = -1)
        : Error("not a group: " + why), a(i), b(j), c(k) {}
    int a, b, c;  // first failing triple, when applicable
};

struct UnsupportedSize : Error {
    using Error::Error;
};

/// Two distributions do not share the same underlying group.
struct GroupMismatch : Error {
    using Error::Error;
};

struct InvalidDistribution : Error {
    using Error::Error;
};

/// A truncated Fourier series dips below zero.
struct NotADensity : Error {
    NotADensity(double min_val, double at)
        : Error("not a density: minimum " + std::to_string(min_val) + " at x=" +
                std::to_string(at)),
          min_value(min_val), argmin(at) {}
    double min_value;
    double argmin;
};

struct GridTooCoarse : Error {
    using Error::Error;
};

struct QuadratureFailure : Error {
    using Error::Error;
};

/// Distortion profile violates d0(e)=0 or positivity off the identity.
struct ProfileInvalid : Error {
    using Error::Error;
};

/// Exact transport solver refuses instances above its size bound.
struct SizeLimit : Error {
    using Error::Error;
};

struct RangeError : Error {
    using Error::Error;
};

/// Iterative solver hit its iteration cap before reaching tolerance.
struct NoConvergence : Error {
    NoConvergence(double beta_, double last_delta_)
        : Error("no convergence at beta=" + std::to_string(beta_)),
          beta(beta_), last_delta(last_delta_) {}
    double beta;
    double last_delta;
};

struct InsufficientData : Error {
    using Error::Error;
};

struct PreconditionFailed : Error {
    using Error::Error;
};

/// Compensation identity evaluated on inputs whose divergence is infinite.
struct InfiniteTerm : Error {
    using Error::Error;
};

}  // namespace haarkit
