// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// Typed field access over nlohmann::json with located schema errors.

#pragma once

#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tgkit/error.hpp"

namespace tgkit::internal {

using Json = nlohmann::json;

class Record {
 public:
  Record(const Json& j, std::string location) : j_(j), location_(std::move(location)) {
    if (!j_.is_object()) Fail("", "record must be a JSON object");
  }

  [[noreturn]] void Fail(std::string_view field, std::string_view what) const {
    std::string msg = location_ + ": ";
    if (!field.empty()) msg += "field '" + std::string(field) + "': ";
    msg += what;
    throw Error(ErrorCode::kSchema, msg);
  }

  bool Has(const char* field) const { return j_.contains(field) && !j_.at(field).is_null(); }

  const Json& Raw(const char* field) const {
    if (!Has(field)) Fail(field, "missing");
    return j_.at(field);
  }

  std::string String(const char* field) const {
    const Json& v = Raw(field);
    if (!v.is_string()) Fail(field, "expected string");
    return v.get<std::string>();
  }

  double Number(const char* field) const {
    const Json& v = Raw(field);
    if (!v.is_number()) Fail(field, "expected number");
    return v.get<double>();
  }

  std::vector<double> Numbers(const char* field) const {
    const Json& v = Raw(field);
    if (!v.is_array()) Fail(field, "expected array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const Json& x : v) {
      if (!x.is_number()) Fail(field, "expected array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  // Rejects keys outside `allowed`.
  void OnlyKeys(std::initializer_list<std::string_view> allowed) const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      bool ok = false;
      for (std::string_view a : allowed) ok = ok || it.key() == a;
      if (!ok) Fail(it.key(), "unknown field");
    }
  }

  const Json& json() const { return j_; }
  const std::string& location() const { return location_; }

 private:
  const Json& j_;
  std::string location_;
};

// Splits JSONL text, validates the header record and calls `fn` for every
// following non-blank line. An empty input is accepted as having no records.
inline void ForEachJsonlRecord(std::string_view text, std::string_view source,
                               std::string_view schema,
                               const std::function<void(const Record&)>& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (nl == text.size()) break;
      continue;
    }
    const std::string location = std::string(source) + ":" + std::to_string(line_no);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kSchema, location + ": invalid JSON: " + e.what());
    }
    Record rec(j, location);
    if (!header_seen) {
      if (!rec.Has("schema")) rec.Fail("schema", "first line must be the header record");
      if (rec.String("schema") != schema) {
        rec.Fail("schema", "expected '" + std::string(schema) + "'");
      }
      if (rec.Number("version") != 1) rec.Fail("version", "unsupported schema version");
      header_seen = true;
    } else {
      fn(rec);
    }
    if (nl == text.size()) break;
  }
}

inline std::string HeaderLine(std::string_view schema) {
  Json h = {{"schema", schema}, {"version", 1}};
  return h.dump() + "\n";
}

}  // namespace tgkit::internal
