#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rieszdec {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

/// A pivot fell below pivot_tol * ||A||_inf; `stage` is the elimination step.
struct SingularMatrixError : Error {
    SingularMatrixError(const std::string& msg, std::size_t stage_)
        : Error(msg), stage(stage_) {}
    std::size_t stage;
};

/// QR iteration failed to deflate the block [lo, hi] within the sweep budget.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& msg, std::size_t lo_, std::size_t hi_)
        : Error(msg), lo(lo_), hi(hi_) {}
    std::size_t lo;
    std::size_t hi;
};

/// A quadrature node landed on (or numerically too close to) the spectrum.
struct ContourError : Error {
    ContourError(const std::string& msg, std::complex<double> node_)
        : Error(msg), node(node_) {}
    std::complex<double> node;
};

/// Cluster geometry unusable: overlapping clusters, coincident values,
/// or a request that needs an isolated/decomposable spectrum.
struct ClusterError : Error {
    using Error::Error;
};

struct GeneratorError : Error {
    using Error::Error;
};

/// Input file rejected. line/column are 1-based; 0 means unknown.
struct ParseError : Error {
    explicit ParseError(const std::string& msg, std::size_t line_ = 0, std::size_t column_ = 0)
        : Error(msg), line(line_), column(column_) {}
    std::size_t line;
    std::size_t column;
};

} // namespace rieszdec
