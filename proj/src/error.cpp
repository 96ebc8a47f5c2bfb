// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "tgkit/error.hpp"

namespace tgkit {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kConstruction: return "ConstructionError";
    case ErrorCode::kMissingGold: return "MissingGold";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kDuplicateTask: return "DuplicateTask";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kEmptyAnswerMask: return "EmptyAnswerMask";
    case ErrorCode::kOddDimension: return "OddDimension";
    case ErrorCode::kBudgetExceedsFrames: return "BudgetExceedsFrames";
    case ErrorCode::kNoAudibleSpan: return "NoAudibleSpan";
    case ErrorCode::kInsufficientDistractors: return "InsufficientDistractors";
    case ErrorCode::kDuplicateTimestamps: return "DuplicateTimestamps";
    case ErrorCode::kFilteredOut: return "FilteredOut";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kDuplicatePrediction: return "DuplicatePrediction";
    case ErrorCode::kUnknownItem: return "UnknownItem";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace tgkit
