#pragma once

#include <stdexcept>
#include <string>

namespace gseelab {

// Typed failures. Estimators and oracles throw these instead of returning
// sentinel values; the CLI maps them to nonzero exit codes.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct DegenerateGroundGap : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct WeightSumViolation : Error { using Error::Error; };
struct EmptySpectrum : Error { using Error::Error; };
struct DegreeCapExceeded : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct TrialCapExhausted : Error { using Error::Error; };
struct NoAcceptedSamples : Error { using Error::Error; };
struct InvalidParameters : Error { using Error::Error; };
struct OracleFailure : Error { using Error::Error; };
struct LemmaViolation : Error { using Error::Error; };
struct PromiseViolationDetected : Error { using Error::Error; };

} // namespace gseelab
