#pragma once
#include <stdexcept>
#include <string>

namespace rkp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// rank-deficient / zero-norm input where full rank is required
struct DegenerateInput : Error { using Error::Error; };
// dimension mismatch or non-square matrix
struct ShapeError : Error { using Error::Error; };
// discriminant below guard: the two chords are (anti)parallel
struct NearSingular : Error { using Error::Error; };
// more than the allowed fraction of Monte Carlo samples rejected
struct TooManyRejections : Error { using Error::Error; };
// invalid curve specification (e.g. even petal count)
struct InvalidSpec : Error { using Error::Error; };
// operation not available for the requested parameters
struct Unsupported : Error { using Error::Error; };
// min distance between curves is numerically zero
struct TouchingCurves : Error { using Error::Error; };
// diagonal-split refinement inapplicable (eta1 <= 0 on the grid)
struct NonpositiveEta : Error { using Error::Error; };
// least-squares fit failed its held-out residual check
struct IllConditioned : Error { using Error::Error; };
// argument outside the mathematical domain of the bound
struct InvalidInput : Error { using Error::Error; };

} // namespace rkp
