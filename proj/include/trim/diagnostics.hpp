#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trim {

/// Named failure and warning conditions. Each maps onto the integer `ifail`
/// value the original FORTRAN routines returned (see ifail()).
enum class DiagnosticCode
{
    // ifail -1: input data not correct / work space too small
    InputTooSmall,
    FreeNodeOutsideDomain,
    AllCollinear,
    DegenerateTriangle,
    DegenerateSegment,
    EmptyInput,
    // ifail -2
    NodeBudgetExceeded,
    // ifail -3
    SegmentOverflow,
    // ifail -4
    BadCounts,
    // ifail -5 / -6
    CapacityExceeded,
    // ifail -7
    EdgeCrossingDetected,
    CrossStackOverflow,
    // ifail -8
    NearListOverflow,
    // ifail +1
    CheckMeshWarning,
    NoFreeNodes,
    InsertSpaceExhausted,
    NonConvergence,
    Stalled,
    // ifail +2 (stmsh)
    EulerViolation,
    // artifact-level conditions without an ifail counterpart
    ParseError,
    OrientationError,
    InvalidParameter,
    NotImplemented,
};

std::string_view to_string(DiagnosticCode code);

/// The ifail integer the routine family would have reported; 0 for codes
/// that only exist at the artifact level.
int ifail(DiagnosticCode code);

/// Warnings are the positive-ifail family; generation continues after them.
inline bool is_warning(DiagnosticCode code) { return ifail(code) > 0; }

struct Diagnostic
{
    DiagnosticCode code;
    std::string message;
};

std::string describe(const Diagnostic& d);

class MeshError : public std::runtime_error
{
public:
    MeshError(DiagnosticCode code, const std::string& message,
              std::optional<int> line = std::nullopt);

    DiagnosticCode code() const noexcept { return code_; }
    /// 1-based input line for parse errors.
    std::optional<int> line() const noexcept { return line_; }

private:
    DiagnosticCode code_;
    std::optional<int> line_;
};

using Warnings = std::vector<Diagnostic>;

} // namespace trim
