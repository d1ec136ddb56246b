#pragma once

#include <stdexcept>

namespace camoeval {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raster / metric preconditions
struct DimensionMismatch : Error { using Error::Error; };
struct EmptyForeground : Error { using Error::Error; };
struct EmptyGroundTruth : Error { using Error::Error; };
struct BothEmpty : Error { using Error::Error; };

// Correlation model
struct DegenerateCovariance : Error { using Error::Error; };
struct KernelTooLarge : Error { using Error::Error; };

// Camouflage quantification
struct EmptyContext : Error { using Error::Error; };
struct NoValidPatches : Error { using Error::Error; };
struct EmptyCorpus : Error { using Error::Error; };

// Meta-measure protocols
struct LengthMismatch : Error { using Error::Error; };
struct DegenerateRanks : Error { using Error::Error; };
struct TooFewQualifiedSamples : Error { using Error::Error; };
struct EmptyCandidateRegion : Error { using Error::Error; };
struct MissingImage : Error { using Error::Error; };

// IO
struct IoError : Error { using Error::Error; };
struct DecodeError : Error { using Error::Error; };

}  // namespace camoeval
