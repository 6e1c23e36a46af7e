#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lottie {

enum class ErrorCode {
    MalformedJson,
    UnsupportedLayerKind,
    SchemaViolation,
    DegenerateDuration,
    Rejected,
    UnknownParamType,
    TokenOutOfRange,
    EmptyStats,
    UnsupportedContent,
    ArityMismatch,
    UnbalancedNesting,
    MissingMeta,
    VersionMismatch,
    TextTooLong,
    KTooLarge,
    AlreadyAnimated,
    UnsupportedSvgFeature,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `path` locates the offending node in
/// the document (e.g. `layers[2].ks.r`); `position` is the index of the
/// offending token for token-level errors.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, std::string path, const std::string& message,
          std::optional<std::size_t> position = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    const std::string& path() const noexcept { return path_; }
    std::optional<std::size_t> position() const noexcept { return position_; }

  private:
    ErrorCode code_;
    std::string path_;
    std::optional<std::size_t> position_;
};

}  // namespace lottie
