#pragma once

#include <stdexcept>
#include <string>

namespace recd {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (edge lists, label files).
class ParseError : public Error {
public:
    using Error::Error;
};

// A modification scheme that does not fit the graph it targets.
class ValidityError : public Error {
public:
    using Error::Error;
};

// Requested more samples than the universe holds.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A vertex listed twice with different community labels.
class ConflictError : public Error {
public:
    using Error::Error;
};

// A label file that does not cover the bound graph, or names unknown vertices.
class CoverageError : public Error {
public:
    using Error::Error;
};

// Metric undefined for the given input (empty graph, n < 2, ...).
class MetricError : public Error {
public:
    using Error::Error;
};

// Argument outside the operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Fixed-point iteration failed to reach its tolerance within the cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Inconsistent or incomplete configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Detector failure: broken external partition plug or exceeded iteration cap.
class DetectorError : public Error {
public:
    using Error::Error;
};

// Partitions fed to an ensemble do not share a vertex set.
class EnsembleError : public Error {
public:
    using Error::Error;
};

// Enhancement could not produce a usable result (e.g. no core communities).
class EnhancementError : public Error {
public:
    using Error::Error;
};

} // namespace recd
