#ifndef CURVLAB_ERRORS_HPP
#define CURVLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace curvlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPositiveMetric : Error { using Error::Error; };
struct OutOfDomain : Error { using Error::Error; };
struct RankDeficientSeed : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct VectorNotInSubspace : Error { using Error::Error; };
struct InvalidWeights : Error { using Error::Error; };
struct DimensionTooLarge : Error { using Error::Error; };
struct DegenerateDenominator : Error { using Error::Error; };
struct DegreeOverflow : Error { using Error::Error; };
struct NotHolomorphic : Error { using Error::Error; };
struct NotKahler : Error { using Error::Error; };
struct NotTorusModel : Error { using Error::Error; };
struct WrongDimension : Error { using Error::Error; };
struct UnknownFunctional : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace curvlab

#endif
