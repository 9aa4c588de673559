#pragma once

#include <stdexcept>
#include <string>

namespace hebbocr {

enum class ErrorCode {
    MalformedHeader,
    ValueOutOfRange,
    TruncatedData,
    NoInk,
    DimensionMismatch,
    DuplicateLabel,
    UnknownLabel,
    UnknownVersion,
    ChecksumMismatch,
    MalformedRecord,
    NoTests,
    CountOverflow,
    CanvasTooSmall,
    ManifestExists,
    IoFailure,
    InvalidArgument,
};

/// Error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
    if (!condition) fail(code, message);
}

} // namespace hebbocr
