#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qrflip {

/// Stable error codes shared by every module; the CLI prints these names.
enum class Errc {
  NotPrimitive,
  DegreeMismatch,
  DivideByZero,
  FieldMismatch,
  LengthMismatch,
  TooFewWords,
  NotADivisor,
  DeltaOutOfRange,
  BadFormat,
  BadDimensions,
  DecodeFailure,
  UnsupportedVersion,
  Overflow,
  FormatUnreadable,
  BlockDecodeFailure,
  LayoutMismatch,
  ConfigMismatch,
  VerificationFailed,
  UsageError,
  IoError,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::DivideByZero: return "DivideByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::TooFewWords: return "TooFewWords";
    case Errc::NotADivisor: return "NotADivisor";
    case Errc::DeltaOutOfRange: return "DeltaOutOfRange";
    case Errc::BadFormat: return "BadFormat";
    case Errc::BadDimensions: return "BadDimensions";
    case Errc::DecodeFailure: return "DecodeFailure";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::Overflow: return "Overflow";
    case Errc::FormatUnreadable: return "FormatUnreadable";
    case Errc::BlockDecodeFailure: return "BlockDecodeFailure";
    case Errc::LayoutMismatch: return "LayoutMismatch";
    case Errc::ConfigMismatch: return "ConfigMismatch";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::UsageError: return "UsageError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qrflip
