// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

#include "tgkit/answer_parse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

namespace tgkit {
namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }
bool IsAlpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
// Multi-byte UTF-8 characters count as word characters so that a letter glued
// to an accented character is not read as a standalone token. Exceptions are
// Latin-1 punctuation (lead byte C2), the U+2000-U+2FFF punctuation, arrow and
// operator blocks (lead E2) and ideographic punctuation (E3 80).
bool IsWordAt(std::string_view text, std::size_t i) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
  const unsigned char c = byte(i);
  if (c < 0x80) {
    return IsDigit(static_cast<char>(c)) || IsAlpha(static_cast<char>(c)) || c == '_';
  }
  std::size_t lead = i;
  while (lead > 0 && i - lead < 3 && (byte(lead) & 0xC0) == 0x80) --lead;
  const unsigned char l = byte(lead);
  if (l == 0xC2 || l == 0xE2) return false;
  if (l == 0xE3 && lead + 1 < text.size() && byte(lead + 1) == 0x80) return false;
  return true;
}
char Lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }
char Upper(char c) { return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c; }

bool StartsWithAt(std::string_view text, std::size_t pos, std::string_view word) {
  return text.substr(pos, word.size()) == word;
}

// Offset just past the last "answer" word, or npos.
std::size_t MarkerEnd(std::string_view text) {
  constexpr std::string_view kMarker = "answer";
  std::size_t found = std::string_view::npos;
  for (std::size_t i = 0; i + kMarker.size() <= text.size(); ++i) {
    if (i > 0 && IsAlpha(text[i - 1])) continue;
    bool match = true;
    for (std::size_t k = 0; k < kMarker.size(); ++k) {
      if (Lower(text[i + k]) != kMarker[k]) {
        match = false;
        break;
      }
    }
    if (match) found = i + kMarker.size();
  }
  return found;
}

// Minus signs: ASCII hyphen and U+2212.
bool PrecededByMinus(std::string_view text, std::size_t pos) {
  std::size_t sign_start;
  if (pos >= 1 && text[pos - 1] == '-') {
    sign_start = pos - 1;
  } else if (pos >= 3 && StartsWithAt(text, pos - 3, "\xE2\x88\x92")) {
    sign_start = pos - 3;
  } else {
    return false;
  }
  // "72-110" is a range, not a negative number.
  return sign_start == 0 || !(IsWordAt(text, sign_start - 1) || text[sign_start - 1] == ']');
}

std::size_t ScanDigits(std::string_view text, std::size_t pos) {
  while (pos < text.size() && IsDigit(text[pos])) ++pos;
  return pos;
}

// Consumes an optional ".ddd" fraction.
std::size_t ScanFraction(std::string_view text, std::size_t pos) {
  if (pos + 1 < text.size() && text[pos] == '.' && IsDigit(text[pos + 1])) {
    return ScanDigits(text, pos + 1);
  }
  return pos;
}

double ToDouble(std::string_view digits) {
  double v = 0.0;
  const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (res.ec != std::errc()) return std::numeric_limits<double>::infinity();
  return v;
}

// Optional unit suffix after a number; returns the new position.
std::size_t ScanUnit(std::string_view text, std::size_t pos) {
  std::size_t p = pos;
  while (p < text.size() && text[p] == ' ') ++p;
  static constexpr std::string_view kUnits[] = {"seconds", "second", "secs", "sec", "s"};
  for (std::string_view unit : kUnits) {
    if (p + unit.size() <= text.size()) {
      bool match = true;
      for (std::size_t k = 0; k < unit.size(); ++k) {
        if (Lower(text[p + k]) != unit[k]) {
          match = false;
          break;
        }
      }
      if (match && (p + unit.size() == text.size() || !IsWordAt(text, p + unit.size()))) {
        return p + unit.size();
      }
    }
  }
  return pos;
}

struct TimeToken {
  bool clock = false;
  bool valid = true;
  double seconds = 0.0;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Reads one time token starting at a digit. Returns nullopt when the digits
// are glued to other word characters ("3B", "2nd") and are not a time.
std::optional<TimeToken> ReadTimeToken(std::string_view text, std::size_t pos) {
  TimeToken tok;
  tok.begin = pos;
  const std::size_t int_end = ScanDigits(text, pos);
  if (int_end < text.size() && text[int_end] == ':' && int_end + 1 < text.size() &&
      IsDigit(text[int_end + 1])) {
    tok.clock = true;
    const std::size_t sec_begin = int_end + 1;
    const std::size_t sec_int_end = ScanDigits(text, sec_begin);
    std::size_t end = ScanFraction(text, sec_int_end);
    bool well_formed = (int_end - pos) <= 2 && (sec_int_end - sec_begin) == 2;
    // H:MM:SS and longer chains are outside the accepted forms.
    while (end + 1 < text.size() && text[end] == ':' && IsDigit(text[end + 1])) {
      well_formed = false;
      end = ScanFraction(text, ScanDigits(text, end + 1));
    }
    if (end < text.size() && IsWordAt(text, end)) {
      const std::size_t after_unit = ScanUnit(text, end);
      if (after_unit == end) return std::nullopt;
      end = after_unit;
    }
    tok.end = end;
    const double minutes = ToDouble(text.substr(pos, int_end - pos));
    const double secs = ToDouble(text.substr(sec_begin, ScanFraction(text, sec_int_end) - sec_begin));
    tok.valid = well_formed && secs < 60.0;
    tok.seconds = minutes * 60.0 + secs;
  } else {
    const std::size_t num_end = ScanFraction(text, int_end);
    tok.seconds = ToDouble(text.substr(pos, num_end - pos));
    std::size_t end = ScanUnit(text, num_end);
    if (end == num_end && end < text.size() && IsWordAt(text, end)) return std::nullopt;
    // "3.5.1" style version strings are not times.
    if (end == num_end && end + 1 < text.size() && text[end] == '.' && IsDigit(text[end + 1])) {
      return std::nullopt;
    }
    tok.end = end;
  }
  if (PrecededByMinus(text, pos)) tok.valid = false;
  if (!std::isfinite(tok.seconds)) tok.valid = false;
  return tok;
}

std::vector<TimeToken> ScanTimeTokens(std::string_view text) {
  std::vector<TimeToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (IsDigit(text[i]) && (i == 0 || (!IsWordAt(text, i - 1) && text[i - 1] != '.'))) {
      if (auto tok = ReadTimeToken(text, i)) {
        out.push_back(*tok);
        i = tok->end;
        continue;
      }
      while (i < text.size() && IsWordAt(text, i)) ++i;
      continue;
    }
    ++i;
  }
  return out;
}

// Without a marker, disagreeing or malformed clock tokens make the answer
// ambiguous.
std::optional<Timestamp> PickTimestamp(const std::vector<TimeToken>& tokens, bool marked) {
  std::vector<const TimeToken*> clocks;
  for (const auto& t : tokens) {
    if (t.clock) clocks.push_back(&t);
  }
  const TimeToken* pick = nullptr;
  if (!clocks.empty()) {
    pick = clocks.front();
    if (!marked) {
      for (const TimeToken* c : clocks) {
        if (!c->valid || c->seconds != pick->seconds) {
          return std::nullopt;
        }
      }
    }
  } else if (!tokens.empty()) {
    pick = &tokens.front();
  }
  if (pick == nullptr || !pick->valid) return std::nullopt;
  return Timestamp(pick->seconds);
}

// Returns the tail after the last answer marker, or an empty view.
std::string_view MarkedTail(std::string_view text) {
  const std::size_t end = MarkerEnd(text);
  if (end == std::string_view::npos) return {};
  return text.substr(end);
}

struct SpanCandidate {
  bool valid = false;
  double start = 0.0;
  double end = 0.0;
};

std::size_t SkipSpaces(std::string_view text, std::size_t pos) {
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  return pos;
}

// Separators accepted between span endpoints: '-', en dash, em dash, '~', "to".
std::size_t ScanRangeSeparator(std::string_view text, std::size_t pos) {
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '~')) return pos + 1;
  if (StartsWithAt(text, pos, "\xE2\x80\x93") || StartsWithAt(text, pos, "\xE2\x80\x94")) {
    return pos + 3;
  }
  if (pos + 2 <= text.size() && Lower(text[pos]) == 't' && Lower(text[pos + 1]) == 'o') {
    return pos + 2;
  }
  return std::string_view::npos;
}

// Parses "[a-b]" at pos (pointing at '['); nullopt if the bracket is not a span.
std::optional<SpanCandidate> ReadSpan(std::string_view text, std::size_t pos, std::size_t& next) {
  std::size_t p = SkipSpaces(text, pos + 1);
  if (p >= text.size() || !IsDigit(text[p])) return std::nullopt;
  auto a = ReadTimeToken(text, p);
  if (!a) return std::nullopt;
  p = SkipSpaces(text, a->end);
  p = ScanRangeSeparator(text, p);
  if (p == std::string_view::npos) return std::nullopt;
  p = SkipSpaces(text, p);
  if (p >= text.size() || !IsDigit(text[p])) return std::nullopt;
  auto b = ReadTimeToken(text, p);
  if (!b) return std::nullopt;
  p = SkipSpaces(text, b->end);
  if (p >= text.size() || text[p] != ']') return std::nullopt;
  next = p + 1;
  SpanCandidate span;
  span.start = a->seconds;
  span.end = b->seconds;
  span.valid = a->valid && b->valid && a->seconds < b->seconds;
  return span;
}

std::vector<SpanCandidate> ScanSpans(std::string_view text) {
  std::vector<SpanCandidate> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '[') {
      std::size_t next = i + 1;
      if (auto span = ReadSpan(text, i, next)) {
        out.push_back(*span);
        i = next;
        continue;
      }
    }
    ++i;
  }
  return out;
}

bool IsStandalone(std::string_view text, std::size_t pos, std::size_t len) {
  const bool left = pos == 0 || !IsWordAt(text, pos - 1);
  const bool right = pos + len >= text.size() || !IsWordAt(text, pos + len);
  return left && right;
}

std::optional<char> FindLetter(std::string_view text, std::string_view allowed, bool upper) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!IsAlpha(c) || !IsStandalone(text, i, 1)) continue;
    if (upper != (c >= 'A' && c <= 'Z')) continue;
    if (allowed.find(Upper(c)) != std::string_view::npos) return Upper(c);
  }
  return std::nullopt;
}

std::optional<char> FindChoice(std::string_view text, std::string_view allowed) {
  if (auto c = FindLetter(text, allowed, true)) return c;
  return FindLetter(text, allowed, false);
}

struct SequenceScan {
  bool found = false;
  LabelOrder order{};
};

// Looks for a standalone "YZX" word, else exactly three standalone X/Y/Z
// letters. Any other count of single labels is "found" but malformed.
SequenceScan FindSequence(std::string_view text, bool& stray_labels) {
  stray_labels = false;
  auto is_label = [](char c) { return c == 'X' || c == 'Y' || c == 'Z'; };
  for (std::size_t i = 0; i + 3 <= text.size(); ++i) {
    if (is_label(text[i]) && is_label(text[i + 1]) && is_label(text[i + 2]) &&
        IsStandalone(text, i, 3)) {
      return {true, {text[i], text[i + 1], text[i + 2]}};
    }
  }
  std::vector<char> singles;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (is_label(text[i]) && IsStandalone(text, i, 1)) singles.push_back(text[i]);
  }
  if (singles.size() == 3) return {true, {singles[0], singles[1], singles[2]}};
  stray_labels = !singles.empty();
  return {};
}

ParsedAnswer OrderingFrom(std::string_view region, const std::string& raw, bool& matched) {
  matched = true;
  constexpr std::string_view kLetters = "ABCDEF";
  if (auto c = FindLetter(region, kLetters, true)) {
    return ParsedAnswer::Of(AnswerKind::kOrdering, OptionLetter{*c}, raw);
  }
  bool stray = false;
  const SequenceScan seq = FindSequence(region, stray);
  if (seq.found) {
    if (auto letter = GtoLetterFor(seq.order)) {
      return ParsedAnswer::Of(AnswerKind::kOrdering, OptionLetter{*letter}, raw);
    }
    return ParsedAnswer::Invalid(AnswerKind::kOrdering, raw);
  }
  if (auto c = FindLetter(region, kLetters, false)) {
    return ParsedAnswer::Of(AnswerKind::kOrdering, OptionLetter{*c}, raw);
  }
  matched = stray;
  return ParsedAnswer::Invalid(AnswerKind::kOrdering, raw);
}

}  // namespace

const char* AnswerKindName(AnswerKind kind) {
  switch (kind) {
    case AnswerKind::kTimestamp: return "timestamp";
    case AnswerKind::kIntervalList: return "interval_list";
    case AnswerKind::kChoice: return "choice";
    case AnswerKind::kOrdering: return "ordering";
  }
  return "unknown";
}

ParsedAnswer ParsedAnswer::Invalid(AnswerKind kind, std::string raw) {
  return ParsedAnswer(kind, false, std::monostate{}, std::move(raw));
}

ParsedAnswer ParsedAnswer::Of(AnswerKind kind, Value value, std::string raw) {
  return ParsedAnswer(kind, true, std::move(value), std::move(raw));
}

std::optional<Timestamp> ParsedAnswer::timestamp() const {
  if (const auto* t = std::get_if<Timestamp>(&value_)) return *t;
  return std::nullopt;
}

std::optional<IntervalSet> ParsedAnswer::intervals() const {
  if (const auto* s = std::get_if<IntervalSet>(&value_)) return *s;
  return std::nullopt;
}

std::optional<char> ParsedAnswer::letter() const {
  if (const auto* l = std::get_if<OptionLetter>(&value_)) return l->letter;
  return std::nullopt;
}

ParsedAnswer ParseTimestamp(std::string_view text) {
  std::string raw(text);
  const std::string_view tail = MarkedTail(text);
  if (!tail.empty()) {
    auto tokens = ScanTimeTokens(tail);
    if (!tokens.empty()) {
      if (auto t = PickTimestamp(tokens, true)) {
        return ParsedAnswer::Of(AnswerKind::kTimestamp, *t, std::move(raw));
      }
      return ParsedAnswer::Invalid(AnswerKind::kTimestamp, std::move(raw));
    }
  }
  auto tokens = ScanTimeTokens(text);
  if (auto t = PickTimestamp(tokens, false)) {
    return ParsedAnswer::Of(AnswerKind::kTimestamp, *t, std::move(raw));
  }
  return ParsedAnswer::Invalid(AnswerKind::kTimestamp, std::move(raw));
}

ParsedAnswer ParseIntervalList(std::string_view text) {
  std::string raw(text);
  std::vector<SpanCandidate> spans;
  const std::string_view tail = MarkedTail(text);
  if (!tail.empty()) spans = ScanSpans(tail);
  if (spans.empty()) spans = ScanSpans(text);
  if (spans.empty()) return ParsedAnswer::Invalid(AnswerKind::kIntervalList, std::move(raw));
  std::vector<Interval> intervals;
  intervals.reserve(spans.size());
  for (const SpanCandidate& s : spans) {
    if (!s.valid) return ParsedAnswer::Invalid(AnswerKind::kIntervalList, std::move(raw));
    intervals.emplace_back(s.start, s.end);
  }
  return ParsedAnswer::Of(AnswerKind::kIntervalList, IntervalSet(std::move(intervals)),
                          std::move(raw));
}

ParsedAnswer ParseChoice(std::string_view text, std::string_view allowed) {
  std::string raw(text);
  std::string upper_allowed;
  for (char c : allowed) upper_allowed.push_back(Upper(c));
  const std::string_view tail = MarkedTail(text);
  std::optional<char> c;
  if (!tail.empty()) c = FindChoice(tail, upper_allowed);
  if (!c) c = FindChoice(text, upper_allowed);
  if (!c) return ParsedAnswer::Invalid(AnswerKind::kChoice, std::move(raw));
  return ParsedAnswer::Of(AnswerKind::kChoice, OptionLetter{*c}, std::move(raw));
}

ParsedAnswer ParseOrdering(std::string_view text) {
  const std::string raw(text);
  const std::string_view tail = MarkedTail(text);
  bool matched = false;
  if (!tail.empty()) {
    ParsedAnswer a = OrderingFrom(tail, raw, matched);
    if (matched) return a;
  }
  return OrderingFrom(text, raw, matched);
}

std::string FormatSeconds(Seconds s) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), s, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

std::string FormatTimestamp(Timestamp t) { return FormatSeconds(t.seconds()); }

std::string FormatIntervalList(const IntervalSet& s) {
  std::string out;
  for (const Interval& iv : s.intervals()) {
    if (!out.empty()) out += ", ";
    out += "[" + FormatTimestamp(iv.start()) + "-" + FormatTimestamp(iv.end()) + "]";
  }
  return out;
}

std::string FormatLetter(char letter) { return std::string(1, letter); }

std::string FormatAnswer(const ParsedAnswer& a) {
  if (!a.format_ok()) return {};
  if (auto t = a.timestamp()) return FormatTimestamp(*t);
  if (auto s = a.intervals()) return FormatIntervalList(*s);
  if (auto l = a.letter()) return FormatLetter(*l);
  return {};
}

const std::array<LabelOrder, 6>& GtoOptionTable() {
  static const std::array<LabelOrder, 6> kTable = {{
      {'X', 'Y', 'Z'},
      {'X', 'Z', 'Y'},
      {'Y', 'X', 'Z'},
      {'Y', 'Z', 'X'},
      {'Z', 'X', 'Y'},
      {'Z', 'Y', 'X'},
  }};
  return kTable;
}

std::optional<char> GtoLetterFor(const LabelOrder& order) {
  const auto& table = GtoOptionTable();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] == order) return static_cast<char>('A' + i);
  }
  return std::nullopt;
}

}  // namespace tgkit
