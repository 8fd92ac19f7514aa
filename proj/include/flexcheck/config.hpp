#ifndef FLEXCHECK_CONFIG_HPP
#define FLEXCHECK_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flexcheck {

/// Precondition violated by the caller (bad family, genus < 2, size mismatch, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation could not be certified at the configured tolerances.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested object lies outside what the library constructs (octonionic/exceptional).
class ExcludedError : public DomainError {
public:
    using DomainError::DomainError;
};

struct Tolerances {
    double rank = 1e-9;       ///< singular values below rank * sigma_max count as zero
    double cluster = 1e-7;    ///< eigenvalue merge distance, relative to max operator norm
    double cocycle = 1e-8;    ///< residual of the Fox relator map on a cocycle
    double group = 1e-8;      ///< relator residual and defining-relation residual
    double signature = 1e-8;  ///< eigenvalue band around zero, relative to the matrix norm
    double structure = 1e-9;  ///< bracket closure, invariance and orthogonality checks
};

struct Config {
    Tolerances tol;
    std::uint64_t seed = 0;
    int max_ambient = 64;  ///< cap on the realified ambient matrix size
};

}  // namespace flexcheck

#endif  // FLEXCHECK_CONFIG_HPP
