// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace tgkit {

enum class ErrorCode {
  kInvalidArgument = 1,
  kConstruction,
  kMissingGold,
  kLengthMismatch,
  kDimensionMismatch,
  kZeroVector,
  kEmptyReference,
  kDuplicateTask,
  kTooShort,
  kEmptyAnswerMask,
  kOddDimension,
  kBudgetExceedsFrames,
  kNoAudibleSpan,
  kInsufficientDistractors,
  kDuplicateTimestamps,
  kFilteredOut,
  kSchema,
  kDuplicatePrediction,
  kUnknownItem,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto tgk_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tgkit
