#include <mogami/error.hpp>

namespace mogami {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::DuplicateFacet: return "DuplicateFacet";
    case ErrorCode::SelfPairedFacet: return "SelfPairedFacet";
    case ErrorCode::BadCorr: return "BadCorr";
    case ErrorCode::BadReference: return "BadReference";
    case ErrorCode::InteriorVertex: return "InteriorVertex";
    case ErrorCode::NotBoundary: return "NotBoundary";
    case ErrorCode::SameFacet: return "SameFacet";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::AmbiguousCorr: return "AmbiguousCorr";
    case ErrorCode::NotHealable: return "NotHealable";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::StepRejected: return "StepRejected";
    case ErrorCode::NotLC: return "NotLC";
    case ErrorCode::CrossingMatching: return "CrossingMatching";
    case ErrorCode::NotOrderable: return "NotOrderable";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::NotSpanningTree: return "NotSpanningTree";
    case ErrorCode::NotStronglyConnected: return "NotStronglyConnected";
    case ErrorCode::InterfaceNotConnected: return "InterfaceNotConnected";
    case ErrorCode::NoIncidenceOrder: return "NoIncidenceOrder";
    case ErrorCode::FacetReuse: return "FacetReuse";
    case ErrorCode::CorruptStore: return "CorruptStore";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotRepresentable: return "NotRepresentable";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

} // namespace mogami
