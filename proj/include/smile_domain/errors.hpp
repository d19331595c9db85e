#pragma once

#include <stdexcept>
#include <string>

namespace smile_domain {

struct SmileDomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters outside the type invariants; not a statement about arbitrage.
struct InvalidParams : SmileDomainError {
  using SmileDomainError::SmileDomainError;
};

// Evaluation requested where a function is undefined (N = 0, l = l*, ...).
struct DomainError : SmileDomainError {
  using SmileDomainError::SmileDomainError;
};

struct NoRoot : SmileDomainError {
  using SmileDomainError::SmileDomainError;
};

struct DegenerateError : SmileDomainError {
  using SmileDomainError::SmileDomainError;
};

// Violations of a necessary no-arbitrage condition: the smile is valid
// input but admits butterfly arbitrage.
struct ArbitrageViolation : SmileDomainError {
  using SmileDomainError::SmileDomainError;
};

struct FukasawaViolation : ArbitrageViolation {
  using ArbitrageViolation::ArbitrageViolation;
};

struct RogerLeeViolation : ArbitrageViolation {
  using ArbitrageViolation::ArbitrageViolation;
};

}  // namespace smile_domain
