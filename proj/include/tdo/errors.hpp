#pragma once

#include <stdexcept>
#include <string>

namespace tdo {

/// Input outside a declared validity span (bias ranges, table spans).
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Mathematical domain violation (e.g. depletion model at V >= Vd).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Derivative-based quantity requested at a stationary point.
struct SingularityError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Bad configuration or malformed request; maps to CLI exit code 1.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// File parsing / serialization failure.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A signal-analysis precondition failed on the data (e.g. no dominant carrier).
struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrator divergence or other simulation failure; carries a diagnostic.
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace tdo
