#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lottie/model.hpp"

namespace lottie {

enum class DiagCode {
    SchemaViolation,
    EmptyLayers,
    MissingStyle,
    TemporalVisibility,
    OpacityCollapse,
    ScaleCollapse,
    OffCanvas,
    DanglingRef,
    FontMissing,
};

inline constexpr std::size_t kDiagCodeCount = 9;

std::string_view to_string(DiagCode c);
std::optional<DiagCode> diag_code_from_string(std::string_view s);

enum class Severity { Error, Warning };
std::string_view to_string(Severity s);

struct Diagnostic {
    int level = 1;
    DiagCode code{};
    std::string path;
    std::string message;
    Severity severity = Severity::Error;
    bool operator==(const Diagnostic&) const = default;
};

/// Level and severity are fixed per code.
int diag_level(DiagCode c);
Severity diag_severity(DiagCode c);

struct LintConfig {
    double opacity_collapse = 2.0;  // static opacity at or below this warns
    double scale_collapse = 2.0;    // static scale percent at or below this warns
};

/// Ordered by level, then by document order. Never throws.
std::vector<Diagnostic> lint(const Animation& a, const LintConfig& cfg = {});
/// Parse failures become Level-1 SchemaViolation diagnostics.
std::vector<Diagnostic> lint_json(std::string_view json_text, const LintConfig& cfg = {});

bool has_errors(const std::vector<Diagnostic>& diags);
/// `L2 EmptyLayers layers: message`, one per line.
std::string format_diagnostics(const std::vector<Diagnostic>& diags);
Json diagnostics_json(const std::vector<Diagnostic>& diags);

struct HistogramRow {
    DiagCode code{};
    std::size_t count = 0;
    double percent = 0;
};

/// Dominant code per failing file (errors before warnings, then lower level,
/// then document order); percentages are over files with any diagnostic.
std::vector<HistogramRow> failure_histogram(const std::vector<std::vector<Diagnostic>>& per_file);

}  // namespace lottie
