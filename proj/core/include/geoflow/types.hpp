#ifndef GEOFLOW_TYPES_HPP
#define GEOFLOW_TYPES_HPP

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>
#include <string>

namespace geoflow {

// Chart dimension is at most 4 in this engine; fixed-capacity dynamic types
// keep per-node work allocation-free.
constexpr int kMaxDim = 4;

// Marks a diagnostic that does not apply (left blank in CSV output).
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A chart point lies outside the model's coordinate domain.
struct DomainError : Error {
  using Error::Error;
};

// Two vectors fail to span a 2-plane (sectional curvature undefined).
struct DegeneratePlaneError : Error {
  using Error::Error;
};

// Discrete curve stops being an immersion (node speed underflow).
struct DegenerateCurveError : Error {
  using Error::Error;
};

// Frenet frame cannot be seeded anywhere on the curve.
struct FrameUndefinedError : Error {
  using Error::Error;
};

// Arclength resampling failed (interpolation breakdown or length drift).
struct ResampleError : Error {
  using Error::Error;
};

// A caller-facing precondition was violated (e.g. non-ramp initial data).
struct PreconditionError : Error {
  using Error::Error;
};

// Configuration rejected; message lists every violation.
struct ConfigError : Error {
  using Error::Error;
};

// Warped-product rate denominator 2|π_*T|² − |π_*N|² vanished at the
// max-curvature node; the driving hypothesis fails there.
struct DegenerateDenominatorError : Error {
  using Error::Error;
};

}  // namespace geoflow

#endif  // GEOFLOW_TYPES_HPP
