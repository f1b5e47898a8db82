#ifndef QEL_ERRORS_HPP
#define QEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qel {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NotPsd : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

struct BlochNormExceeded : Error { using Error::Error; };
struct CopyCountOutOfRange : Error { using Error::Error; };
struct SiteOutOfRange : Error { using Error::Error; };

struct IncompletePovm : Error { using Error::Error; };
struct NonPositiveElement : Error { using Error::Error; };
struct RankNotOne : Error { using Error::Error; };

struct EmptyTable : Error { using Error::Error; };
struct NonMonotonicAbscissa : Error { using Error::Error; };
struct NegativeDensity : Error { using Error::Error; };
struct NormalizationImpossible : Error { using Error::Error; };

// Outcome whose a-priori probability is numerically zero; the average-gain
// report flags it instead of propagating.
struct NullOutcome : Error { using Error::Error; };

struct SchmidtParamOutOfRange : Error { using Error::Error; };

// Malformed input file (prior table / POVM CSV).
struct FileFormatError : Error { using Error::Error; };

} // namespace qel

#endif
