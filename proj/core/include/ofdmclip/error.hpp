#pragma once

#include <stdexcept>
#include <string>

namespace ofdmclip {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters, unsupported schemes, infeasible designs.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Sequence lengths or shapes that violate an operation's precondition.
class InputShapeError : public Error {
public:
    using Error::Error;
};

/// A metric that is undefined for its input (e.g. PAPR of an all-zero signal).
class MetricError : public Error {
public:
    using Error::Error;
};

/// Requested value lies outside what the data can answer.
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

/// Remez exchange failed to converge within its iteration cap.
class DesignError : public Error {
public:
    DesignError(const std::string& what, double last_ripple)
        : Error(what), last_ripple_(last_ripple) {}

    double last_ripple() const noexcept { return last_ripple_; }

private:
    double last_ripple_;
};

/// File system failures; the message carries the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ofdmclip

namespace ofdmclip {

/// A simulation cell failed; the message names the (scheme, cr) cell.
class ExperimentError : public Error {
public:
    using Error::Error;
};

}  // namespace ofdmclip
