#pragma once

#include <stdexcept>
#include <string>

namespace noisylabels {

// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// simplex / matrix validation
struct NegativeEntry : Error { using Error::Error; };
struct MassNotOne : Error { using Error::Error; };
struct ColumnMassNotOne : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };

// discrete joint distributions
struct ZeroNoisyClass : Error { using Error::Error; };
struct NotInstanceIndependent : Error { using Error::Error; };

// noise channels
struct LabelOutOfRange : Error { using Error::Error; };
struct DegenerateChannel : Error { using Error::Error; };
struct InfeasibleRates : Error { using Error::Error; };
struct NonPositiveEntry : Error { using Error::Error; };
struct NoFlipFound : Error { using Error::Error; };

// learners
struct EmptyDataset : Error { using Error::Error; };
struct TooFewSamples : Error { using Error::Error; };
struct Diverges : Error { using Error::Error; };
struct NonFinite : Error { using Error::Error; };

// harness / io
struct IoError : Error { using Error::Error; };

}  // namespace noisylabels
