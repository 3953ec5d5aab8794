#pragma once

#include <stdexcept>
#include <string>

namespace fingeo {

enum class Errc {
    NonAssociative,
    NoIdentity,
    NoInverse,
    GroupMismatch,
    CalculusMismatch,
    ClassMismatch,
    RepMismatch,
    NotFibered,
    NotBijective,
    Singular,
    MissingCobein,
    MissingLift,
    DimensionMismatch,
    NotInvertible,
    Infeasible,
    QuadraticSolveIncomplete,
    NotFound,
    NotAnAction,
    NonAssociativeResult,
    NotAFactorization,
    EMapInvalid,
    CharacterizationMismatch,
    NoStar,
    ConfigInvalid,
    Internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace fingeo
