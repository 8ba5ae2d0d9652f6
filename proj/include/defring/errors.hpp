#pragma once

#include <stdexcept>
#include <string>

namespace defring {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DEFRING_ERROR(Name)               \
    class Name : public Error {           \
    public:                               \
        using Error::Error;               \
    }

DEFRING_ERROR(InvalidRing);
DEFRING_ERROR(NotInSubring);
DEFRING_ERROR(ModulusMismatch);
DEFRING_ERROR(BadModulus);
DEFRING_ERROR(BadAction);
DEFRING_ERROR(RelationViolation);
DEFRING_ERROR(NoRootOfUnity);
DEFRING_ERROR(NotDescendable);
DEFRING_ERROR(NotIntegral);
DEFRING_ERROR(HypothesisFailure);
DEFRING_ERROR(NotGenerating);
DEFRING_ERROR(ModuleNotInflated);
DEFRING_ERROR(NotALift);
DEFRING_ERROR(KernelViolation);
DEFRING_ERROR(PrecisionTooLow);
DEFRING_ERROR(HomomorphismFailure);
DEFRING_ERROR(DecompositionFailure);
DEFRING_ERROR(TooLarge);

#undef DEFRING_ERROR

}  // namespace defring
