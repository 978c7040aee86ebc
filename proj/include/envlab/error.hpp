// Copyright 2026 The envlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace envlab {

enum class ErrorCode {
  DuplicateSubsystem,
  UnknownSubsystem,
  InvalidSpace,
  SpaceMismatch,
  NotNormalized,
  NotHermitian,
  NotUnitary,
  InvalidSplit,
  UnknownBasisLabel,
  OamOverflow,
  UnsupportedSubspace,
  EmptyPostSelection,
  UnsupportedSpace,
  EmptyCounts,
  MissingConfiguration,
  ConvergenceFailure,
  IncomparableRecords,
  NotEqualAmplitude,
  NothingToEliminate,
  InvalidState,
  InvalidArgument,
  ParseError,
  VerificationFailure,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateSubsystem: return "DuplicateSubsystem";
    case ErrorCode::UnknownSubsystem: return "UnknownSubsystem";
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvalidSplit: return "InvalidSplit";
    case ErrorCode::UnknownBasisLabel: return "UnknownBasisLabel";
    case ErrorCode::OamOverflow: return "OamOverflow";
    case ErrorCode::UnsupportedSubspace: return "UnsupportedSubspace";
    case ErrorCode::EmptyPostSelection: return "EmptyPostSelection";
    case ErrorCode::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorCode::EmptyCounts: return "EmptyCounts";
    case ErrorCode::MissingConfiguration: return "MissingConfiguration";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::IncomparableRecords: return "IncomparableRecords";
    case ErrorCode::NotEqualAmplitude: return "NotEqualAmplitude";
    case ErrorCode::NothingToEliminate: return "NothingToEliminate";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace envlab
