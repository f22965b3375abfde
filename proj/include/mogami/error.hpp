#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mogami {

enum class ErrorCode {
    DuplicateFacet,
    SelfPairedFacet,
    BadCorr,
    BadReference,
    InteriorVertex,
    NotBoundary,
    SameFacet,
    KindMismatch,
    AmbiguousCorr,
    NotHealable,
    NotInterior,
    StepRejected,
    NotLC,
    CrossingMatching,
    NotOrderable,
    NotComplete,
    NotSpanningTree,
    NotStronglyConnected,
    InterfaceNotConnected,
    NoIncidenceOrder,
    FacetReuse,
    CorruptStore,
    ParseError,
    NotRepresentable,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// Domain error raised by every library operation. `code()` is the
/// machine-readable token the CLI prints on failure.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace mogami
