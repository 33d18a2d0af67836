#include "trim/diagnostics.hpp"

namespace trim {

std::string_view to_string(DiagnosticCode code)
{
    switch (code) {
    case DiagnosticCode::InputTooSmall: return "InputTooSmall";
    case DiagnosticCode::FreeNodeOutsideDomain: return "FreeNodeOutsideDomain";
    case DiagnosticCode::AllCollinear: return "AllCollinear";
    case DiagnosticCode::DegenerateTriangle: return "DegenerateTriangle";
    case DiagnosticCode::DegenerateSegment: return "DegenerateSegment";
    case DiagnosticCode::EmptyInput: return "EmptyInput";
    case DiagnosticCode::NodeBudgetExceeded: return "NodeBudgetExceeded";
    case DiagnosticCode::SegmentOverflow: return "SegmentOverflow";
    case DiagnosticCode::BadCounts: return "BadCounts";
    case DiagnosticCode::CapacityExceeded: return "CapacityExceeded";
    case DiagnosticCode::EdgeCrossingDetected: return "EdgeCrossingDetected";
    case DiagnosticCode::CrossStackOverflow: return "CrossStackOverflow";
    case DiagnosticCode::NearListOverflow: return "NearListOverflow";
    case DiagnosticCode::CheckMeshWarning: return "CheckMeshWarning";
    case DiagnosticCode::NoFreeNodes: return "NoFreeNodes";
    case DiagnosticCode::InsertSpaceExhausted: return "InsertSpaceExhausted";
    case DiagnosticCode::NonConvergence: return "NonConvergence";
    case DiagnosticCode::Stalled: return "Stalled";
    case DiagnosticCode::EulerViolation: return "EulerViolation";
    case DiagnosticCode::ParseError: return "ParseError";
    case DiagnosticCode::OrientationError: return "OrientationError";
    case DiagnosticCode::InvalidParameter: return "InvalidParameter";
    case DiagnosticCode::NotImplemented: return "NotImplemented";
    }
    return "Unknown";
}

int ifail(DiagnosticCode code)
{
    switch (code) {
    case DiagnosticCode::InputTooSmall:
    case DiagnosticCode::FreeNodeOutsideDomain:
    case DiagnosticCode::AllCollinear:
    case DiagnosticCode::DegenerateTriangle:
    case DiagnosticCode::DegenerateSegment:
    case DiagnosticCode::EmptyInput:
        return -1;
    case DiagnosticCode::NodeBudgetExceeded: return -2;
    case DiagnosticCode::SegmentOverflow: return -3;
    case DiagnosticCode::BadCounts: return -4;
    case DiagnosticCode::CapacityExceeded: return -5;
    case DiagnosticCode::EdgeCrossingDetected:
    case DiagnosticCode::CrossStackOverflow:
        return -7;
    case DiagnosticCode::NearListOverflow: return -8;
    case DiagnosticCode::CheckMeshWarning:
    case DiagnosticCode::NoFreeNodes:
    case DiagnosticCode::InsertSpaceExhausted:
    case DiagnosticCode::NonConvergence:
    case DiagnosticCode::Stalled:
        return 1;
    case DiagnosticCode::EulerViolation: return 2;
    case DiagnosticCode::ParseError:
    case DiagnosticCode::OrientationError:
    case DiagnosticCode::InvalidParameter:
    case DiagnosticCode::NotImplemented:
        return 0;
    }
    return 0;
}

std::string describe(const Diagnostic& d)
{
    std::string out(to_string(d.code));
    if (const int f = ifail(d.code); f != 0)
        out += " (ifail " + std::to_string(f) + ")";
    if (!d.message.empty())
        out += ": " + d.message;
    return out;
}

MeshError::MeshError(DiagnosticCode code, const std::string& message, std::optional<int> line)
    : std::runtime_error(describe({code, line ? "line " + std::to_string(*line) + ": " + message
                                              : message}))
    , code_(code)
    , line_(line)
{}

} // namespace trim
