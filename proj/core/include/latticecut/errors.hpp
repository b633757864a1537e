#pragma once

#include <stdexcept>
#include <string>

namespace latticecut {

struct EmptyPolytopeError : std::runtime_error {
    explicit EmptyPolytopeError(const std::string& what) : std::runtime_error(what) {}
};

struct UnboundedPolytopeError : std::runtime_error {
    explicit UnboundedPolytopeError(const std::string& what) : std::runtime_error(what) {}
};

/// Gauge evaluated with an origin that is not strictly interior, or over a
/// lower-dimensional body.
struct GaugeDomainError : std::runtime_error {
    explicit GaugeDomainError(const std::string& what) : std::runtime_error(what) {}
};

/// zero_convex_combination called with 0 outside conv(X).
struct NotInHullError : std::runtime_error {
    explicit NotInHullError(const std::string& what) : std::runtime_error(what) {}
};

/// A Caratheodory input point lies outside the gauge body.
struct GaugeViolationError : std::runtime_error {
    explicit GaugeViolationError(const std::string& what) : std::runtime_error(what) {}
};

/// An oracle answer failed its exact re-check (lattice or scaling membership).
struct OracleContractError : std::runtime_error {
    explicit OracleContractError(const std::string& what) : std::runtime_error(what) {}
};

/// A certified algorithm invariant failed; indicates a bug, never bad input.
struct InvariantViolationError : std::logic_error {
    explicit InvariantViolationError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace latticecut
