#include "fingeo/error.hpp"

namespace fingeo {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonAssociative: return "NonAssociative";
        case Errc::NoIdentity: return "NoIdentity";
        case Errc::NoInverse: return "NoInverse";
        case Errc::GroupMismatch: return "GroupMismatch";
        case Errc::CalculusMismatch: return "CalculusMismatch";
        case Errc::ClassMismatch: return "ClassMismatch";
        case Errc::RepMismatch: return "RepMismatch";
        case Errc::NotFibered: return "NotFibered";
        case Errc::NotBijective: return "NotBijective";
        case Errc::Singular: return "Singular";
        case Errc::MissingCobein: return "MissingCobein";
        case Errc::MissingLift: return "MissingLift";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotInvertible: return "NotInvertible";
        case Errc::Infeasible: return "Infeasible";
        case Errc::QuadraticSolveIncomplete: return "QuadraticSolveIncomplete";
        case Errc::NotFound: return "NotFound";
        case Errc::NotAnAction: return "NotAnAction";
        case Errc::NonAssociativeResult: return "NonAssociativeResult";
        case Errc::NotAFactorization: return "NotAFactorization";
        case Errc::EMapInvalid: return "EMapInvalid";
        case Errc::CharacterizationMismatch: return "CharacterizationMismatch";
        case Errc::NoStar: return "NoStar";
        case Errc::ConfigInvalid: return "ConfigInvalid";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace fingeo
