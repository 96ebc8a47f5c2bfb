// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// Extraction of typed answers from free-form model responses.
//
// None of the Parse* functions throw on text input: anything that cannot be
// read as the requested answer kind comes back with format_ok == false and no
// value. Callers score such answers as incorrect.
//
// Answer markers: the word "answer" (any case, e.g. "Answer:", "the answer is")
// narrows the search to the text following its last occurrence, when that tail
// contains a candidate. Responses often restate the question's own timestamps
// before answering; the marker keeps those out.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "tgkit/temporal.hpp"

namespace tgkit {

enum class AnswerKind { kTimestamp, kIntervalList, kChoice, kOrdering };

const char* AnswerKindName(AnswerKind kind);

struct OptionLetter {
  char letter = 'A';  // upper-case, 'A'..'F'
  friend bool operator==(OptionLetter, OptionLetter) = default;
};

class ParsedAnswer {
 public:
  using Value = std::variant<std::monostate, Timestamp, IntervalSet, OptionLetter>;

  static ParsedAnswer Invalid(AnswerKind kind, std::string raw);
  static ParsedAnswer Of(AnswerKind kind, Value value, std::string raw);

  AnswerKind kind() const { return kind_; }
  bool format_ok() const { return format_ok_; }
  const std::string& raw() const { return raw_; }
  const Value& value() const { return value_; }

  // Typed accessors; nullopt when invalid or of another kind.
  std::optional<Timestamp> timestamp() const;
  std::optional<IntervalSet> intervals() const;
  std::optional<char> letter() const;

  friend bool operator==(const ParsedAnswer&, const ParsedAnswer&) = default;

 private:
  ParsedAnswer(AnswerKind kind, bool ok, Value value, std::string raw)
      : kind_(kind), format_ok_(ok), value_(std::move(value)), raw_(std::move(raw)) {}

  AnswerKind kind_;
  bool format_ok_;
  Value value_;
  std::string raw_;
};

// "M:SS" / "MM:SS" clock tokens take precedence over plain seconds ("72",
// "72.5 s", "72 seconds"). Without a marker the first token wins, but two
// different clock values make the answer ambiguous (format_ok = false).
// A clock token with seconds >= 60 ("1:72") or a signed number is invalid.
ParsedAnswer ParseTimestamp(std::string_view text);

// One or more "[a-b]" spans separated by commas; a and b may be plain seconds
// or clock tokens. Any inverted or empty span invalidates the whole answer.
ParsedAnswer ParseIntervalList(std::string_view text);

// First standalone option letter from `allowed` (case-insensitive). Upper-case
// letters are preferred over lower-case ones so that the article "a" does not
// shadow a real choice.
ParsedAnswer ParseChoice(std::string_view text, std::string_view allowed = "ABCD");

// An option letter A-F or an explicit X/Y/Z sequence ("Y -> Z -> X", "YZX")
// canonicalized through GtoOptionTable(). A sequence that is not a permutation
// is invalid.
ParsedAnswer ParseOrdering(std::string_view text);

// Canonical writers. Parse(Format(v)) == v for every valid payload.
std::string FormatSeconds(Seconds s);
std::string FormatTimestamp(Timestamp t);
std::string FormatIntervalList(const IntervalSet& s);
std::string FormatLetter(char letter);
std::string FormatAnswer(const ParsedAnswer& a);

// Fixed option order A:XYZ B:XZY C:YXZ D:YZX E:ZXY F:ZYX. Each entry lists
// labels in chronological position order.
using LabelOrder = std::array<char, 3>;
const std::array<LabelOrder, 6>& GtoOptionTable();
// Letter for a label order, nullopt if it is not a permutation of X,Y,Z.
std::optional<char> GtoLetterFor(const LabelOrder& order);

}  // namespace tgkit
