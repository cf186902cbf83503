#pragma once

#include <stdexcept>
#include <string>

namespace pcd {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry
struct DegenerateTriangle : Error { using Error::Error; };
struct SingularMap : Error { using Error::Error; };
struct OutsideTriangle : Error { using Error::Error; };

// delaunay
struct TooFewPoints : Error { using Error::Error; };
struct AllCollinear : Error { using Error::Error; };
struct DuplicatePoints : Error { using Error::Error; };

// proximity
struct OutsideSubregion : Error { using Error::Error; };
struct TauBoundary : Error { using Error::Error; };

// digraph
struct TooFewVertices : Error { using Error::Error; };
struct InvalidIndex : Error { using Error::Error; };
struct SelfPair : Error { using Error::Error; };
struct NoInteriorPoints : Error { using Error::Error; };

// patterns
struct InvalidEpsilon : Error { using Error::Error; };

// inference
struct TauOutOfRange : Error { using Error::Error; };
struct BadWeights : Error { using Error::Error; };
struct DegenerateVariance : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct NumericalInstability : Error { using Error::Error; };

// montecarlo
struct TooFewSamples : Error { using Error::Error; };

}  // namespace pcd
