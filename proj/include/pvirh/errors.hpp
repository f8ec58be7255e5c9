#pragma once

#include <stdexcept>
#include <string>

// Error taxonomy.  The transformations and flows of this library are
// birational / locally defined objects:  hitting a divisor where a map is
// undefined is an expected runtime event, not a programming error, so each
// such event gets its own exception type and callers are expected to catch
// and resample or report.

namespace pvirh {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// s0 is undefined on {p = 0}; division by an exact zero scalar also lands here.
struct PoleError : Error {
    using Error::Error;
};

// A state left the chart q not-in {t1,t2,t3,t4}.
struct ChartError : Error {
    using Error::Error;
};

// A Hamiltonian with four finite time variables got t4 = infinity.
struct InfinityError : Error {
    using Error::Error;
};

// A flow trajectory came closer to a pole of the vector field than the
// guard radius allows.
struct SingularityError : Error {
    double arclength = 0.0;
    SingularityError(const std::string& msg, double s) : Error(msg), arclength(s) {}
};

// Adaptive step size underflowed.
struct StepError : Error {
    using Error::Error;
};

// A transport result failed its determinant certificate.
struct AccuracyError : Error {
    using Error::Error;
};

// Singular points too close together to route guarded loops.
struct GeometryError : Error {
    using Error::Error;
};

// Frobenius obstruction requested at a non-resonant point.
struct NotResonantError : Error {
    using Error::Error;
};

// The Takano curve gamma has no admissible points.
struct EmptyCurveError : Error {
    using Error::Error;
};

// A coalescence trajectory violated the general-position guard.
struct AccumulationError : Error {
    using Error::Error;
};

} // namespace pvirh
