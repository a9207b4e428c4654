#ifndef NGT_ERRORS_HPP
#define NGT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ngt {

// Base for every error raised by the library. CLI maps these to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EvaluationAtSingularity : Error { using Error::Error; };
struct SeriesOutOfRange      : Error { using Error::Error; };
struct UnsupportedNode       : Error { using Error::Error; };
struct SchemaError           : Error { using Error::Error; };
struct ConsistencyError      : Error { using Error::Error; };
struct LedgerError           : Error { using Error::Error; };

struct PoleOnCircle          : Error { using Error::Error; };
struct QuadratureNoConvergence : Error { using Error::Error; };
struct IncompleteLedger      : Error { using Error::Error; };
struct MeromorphicMaxModulus : Error { using Error::Error; };
struct NonIntegerWinding     : Error { using Error::Error; };
struct ZeroOnContour         : Error { using Error::Error; };

struct RecurrenceBreakdown : Error {
    long index;
    RecurrenceBreakdown(long idx, const std::string& what) : Error(what), index(idx) {}
};
struct ResidualTooLarge      : Error { using Error::Error; };
struct DivisorDegenerate     : Error { using Error::Error; };

struct InsufficientData      : Error { using Error::Error; };
struct OrderOutOfRange       : Error { using Error::Error; };
struct TooManyFailures       : Error { using Error::Error; };

struct SolutionUnavailable   : Error { using Error::Error; };
struct MeasurementFailure    : Error { using Error::Error; };

} // namespace ngt

#endif
