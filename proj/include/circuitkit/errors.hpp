#pragma once

#include <stdexcept>
#include <string>

namespace circuitkit {

// Base for every error the library throws on bad input or violated preconditions.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define CIRCUITKIT_ERROR(Name)                                               \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what = "") : Error(#Name, what) {}  \
    }

CIRCUITKIT_ERROR(ParseError);
CIRCUITKIT_ERROR(DimensionMismatch);
CIRCUITKIT_ERROR(NotSquare);
CIRCUITKIT_ERROR(SingularBasis);
CIRCUITKIT_ERROR(NonIntegerMatrix);
CIRCUITKIT_ERROR(ZeroVector);
CIRCUITKIT_ERROR(RankDeficient);
CIRCUITKIT_ERROR(EnvelopeExceeded);
CIRCUITKIT_ERROR(NotInSubspace);
CIRCUITKIT_ERROR(EmptyIndexSet);
CIRCUITKIT_ERROR(NotInProjection);
CIRCUITKIT_ERROR(SeparableInput);
CIRCUITKIT_ERROR(NotPointed);
CIRCUITKIT_ERROR(UnboundedRegion);
CIRCUITKIT_ERROR(AlreadyOptimal);
CIRCUITKIT_ERROR(NoAugmentingCircuit);
CIRCUITKIT_ERROR(AlreadyBasic);
CIRCUITKIT_ERROR(UnboundedDirection);
CIRCUITKIT_ERROR(TargetNotBasic);
CIRCUITKIT_ERROR(UnbalancedDemands);
CIRCUITKIT_ERROR(NegativeCost);
CIRCUITKIT_ERROR(NotOptimalPair);
CIRCUITKIT_ERROR(Infeasible);
CIRCUITKIT_ERROR(Unbounded);
CIRCUITKIT_ERROR(OracleInfeasible);
CIRCUITKIT_ERROR(BoxTooLarge);
CIRCUITKIT_ERROR(NotIntegerKernelVector);
CIRCUITKIT_ERROR(BadParameters);
CIRCUITKIT_ERROR(InvalidArgument);

#undef CIRCUITKIT_ERROR

class AuditFailure : public Error {
public:
    AuditFailure(std::string lemma, std::size_t step, const std::string& what)
        : Error("AuditFailure", lemma + " at step " + std::to_string(step) + ": " + what),
          lemma_(std::move(lemma)), step_(step) {}
    const std::string& lemma() const { return lemma_; }
    std::size_t step() const { return step_; }

private:
    std::string lemma_;
    std::size_t step_;
};

}  // namespace circuitkit
