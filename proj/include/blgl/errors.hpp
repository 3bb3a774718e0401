#pragma once

#include <stdexcept>
#include <string>

namespace blgl {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidGrid : Error {
    using Error::Error;
};
struct SingularOperator : Error {
    using Error::Error;
};
struct HorizonExceeded : Error {
    using Error::Error;
};
struct NumericalInstability : Error {
    using Error::Error;
};
struct CFLViolation : Error {
    using Error::Error;
};
struct PicardDivergence : Error {
    using Error::Error;
};
struct NoLayer : Error {
    using Error::Error;
};
struct DegenerateFit : Error {
    using Error::Error;
};
struct QuadratureFailure : Error {
    using Error::Error;
};
struct GridMismatch : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct FormatError : Error {
    using Error::Error;
};
struct VersionError : Error {
    using Error::Error;
};
struct TruncationError : Error {
    using Error::Error;
};

}  // namespace blgl
