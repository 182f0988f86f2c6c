#pragma once

#include <stdexcept>
#include <string>

namespace cyclelift {

// Base of every library error; the CLI maps these to exit code 2 (input) or
// lets them propagate as identity failures where appropriate.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CYCLELIFT_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                       \
    public:                                                           \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

CYCLELIFT_DEFINE_ERROR(InvalidDiscriminant);
CYCLELIFT_DEFINE_ERROR(NotInvertible);
CYCLELIFT_DEFINE_ERROR(NoSuchBasisElement);
CYCLELIFT_DEFINE_ERROR(TruncationExceeded);
CYCLELIFT_DEFINE_ERROR(NotReduced);
CYCLELIFT_DEFINE_ERROR(SquareDiscriminant);
CYCLELIFT_DEFINE_ERROR(NonSquareDiscriminant);
CYCLELIFT_DEFINE_ERROR(RepresentativeNotFound);
CYCLELIFT_DEFINE_ERROR(ConstantTermPresent);
CYCLELIFT_DEFINE_ERROR(NonInvertibleTwist);
CYCLELIFT_DEFINE_ERROR(ToleranceNotMet);
CYCLELIFT_DEFINE_ERROR(InvalidIndex);
CYCLELIFT_DEFINE_ERROR(WeightMismatch);
CYCLELIFT_DEFINE_ERROR(ParseError);

#undef CYCLELIFT_DEFINE_ERROR

}  // namespace cyclelift
