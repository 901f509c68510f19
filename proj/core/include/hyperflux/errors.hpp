#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperflux {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Gamma pole hit. `index` is the multi-index being processed when known.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& what, std::vector<int> index = {})
        : Error(what), index(std::move(index)) {}
    std::vector<int> index;
};

class ResonanceError : public PoleError {
public:
    using PoleError::PoleError;
};

#define HYPERFLUX_ERROR(Name)          \
    class Name : public Error {        \
    public:                            \
        using Error::Error;            \
    };

HYPERFLUX_ERROR(DimensionMismatch)
HYPERFLUX_ERROR(TruncationError)
HYPERFLUX_ERROR(ArityError)
HYPERFLUX_ERROR(ConvergenceError)
HYPERFLUX_ERROR(DomainError)
HYPERFLUX_ERROR(ZeroOperator)
HYPERFLUX_ERROR(NotHomogeneous)
HYPERFLUX_ERROR(InvalidFamily)
HYPERFLUX_ERROR(InvarianceViolation)
HYPERFLUX_ERROR(GenericityError)
HYPERFLUX_ERROR(ClusterError)
HYPERFLUX_ERROR(ParseError)

#undef HYPERFLUX_ERROR

} // namespace hyperflux
