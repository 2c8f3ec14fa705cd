#pragma once

#include <stdexcept>
#include <string>

namespace citycomplex {

/// Base class for all pipeline errors. Carries a short machine-readable
/// code plus a human message with context (row numbers, ids, paths).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct IngestError : Error {
    using Error::Error;
};

struct SpatialError : Error {
    using Error::Error;
};

struct ClusterError : Error {
    using Error::Error;
};

struct ComplexityError : Error {
    using Error::Error;
};

struct RegressionError : Error {
    using Error::Error;
};

struct SynthError : Error {
    using Error::Error;
};

struct PipelineError : Error {
    using Error::Error;
};

}  // namespace citycomplex
