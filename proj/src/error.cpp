#include "lottie/error.hpp"

namespace lottie {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedJson: return "MalformedJson";
        case ErrorCode::UnsupportedLayerKind: return "UnsupportedLayerKind";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::DegenerateDuration: return "DegenerateDuration";
        case ErrorCode::Rejected: return "Rejected";
        case ErrorCode::UnknownParamType: return "UnknownParamType";
        case ErrorCode::TokenOutOfRange: return "TokenOutOfRange";
        case ErrorCode::EmptyStats: return "EmptyStats";
        case ErrorCode::UnsupportedContent: return "UnsupportedContent";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::UnbalancedNesting: return "UnbalancedNesting";
        case ErrorCode::MissingMeta: return "MissingMeta";
        case ErrorCode::VersionMismatch: return "VersionMismatch";
        case ErrorCode::TextTooLong: return "TextTooLong";
        case ErrorCode::KTooLarge: return "KTooLarge";
        case ErrorCode::AlreadyAnimated: return "AlreadyAnimated";
        case ErrorCode::UnsupportedSvgFeature: return "UnsupportedSvgFeature";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

namespace {

std::string format_what(ErrorCode code, const std::string& path, const std::string& message,
                        std::optional<std::size_t> position) {
    std::string out(to_string(code));
    if (position) out += " at token " + std::to_string(*position);
    if (!path.empty()) out += " [" + path + "]";
    if (!message.empty()) out += ": " + message;
    return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string path, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(format_what(code, path, message, position)),
      code_(code),
      path_(std::move(path)),
      position_(position) {}

}  // namespace lottie
