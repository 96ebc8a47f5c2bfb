// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// Vocabulary pairs from the published description of the algorithm.

#include <utility>

#include "doctest.h"
#include "tgkit/metrics.hpp"

using tgkit::PorterStem;

TEST_CASE("porter step 1") {
  const std::pair<const char*, const char*> pairs[] = {
      {"caresses", "caress"}, {"ponies", "poni"},   {"ties", "ti"},
      {"caress", "caress"},   {"cats", "cat"},      {"feed", "feed"},
      {"agreed", "agre"},     {"plastered", "plaster"}, {"bled", "bled"},
      {"motoring", "motor"},  {"sing", "sing"},     {"conflated", "conflat"},
      {"troubled", "troubl"}, {"sized", "size"},    {"hopping", "hop"},
      {"tanned", "tan"},      {"falling", "fall"},  {"hissing", "hiss"},
      {"fizzed", "fizz"},     {"failing", "fail"},  {"filing", "file"},
      {"happy", "happi"},     {"sky", "sky"},
  };
  for (auto [in, out] : pairs) CHECK_MESSAGE(PorterStem(in) == out, in);
}

TEST_CASE("porter steps 2 to 5") {
  const std::pair<const char*, const char*> pairs[] = {
      {"relational", "relat"},       {"conditional", "condit"},   {"rational", "ration"},
      {"valenci", "valenc"},         {"digitizer", "digit"},      {"conformabli", "conform"},
      {"radicalli", "radic"},        {"differentli", "differ"},   {"vileli", "vile"},
      {"analogousli", "analog"},     {"vietnamization", "vietnam"}, {"predication", "predic"},
      {"operator", "oper"},          {"feudalism", "feudal"},     {"decisiveness", "decis"},
      {"hopefulness", "hope"},       {"callousness", "callous"},  {"formaliti", "formal"},
      {"sensitiviti", "sensit"},     {"sensibiliti", "sensibl"},  {"triplicate", "triplic"},
      {"formative", "form"},         {"formalize", "formal"},     {"electriciti", "electr"},
      {"electrical", "electr"},      {"hopeful", "hope"},         {"goodness", "good"},
      {"revival", "reviv"},          {"allowance", "allow"},      {"inference", "infer"},
      {"airliner", "airlin"},        {"gyroscopic", "gyroscop"},  {"adjustable", "adjust"},
      {"defensible", "defens"},      {"irritant", "irrit"},       {"replacement", "replac"},
      {"adjustment", "adjust"},      {"dependent", "depend"},     {"adoption", "adopt"},
      {"homologous", "homolog"},     {"communism", "commun"},     {"activate", "activ"},
      {"angulariti", "angular"},     {"effective", "effect"},     {"bowdlerize", "bowdler"},
      {"probate", "probat"},         {"rate", "rate"},            {"cease", "ceas"},
      {"controll", "control"},       {"roll", "roll"},
      {"generalizations", "gener"},  {"oscillators", "oscil"},
  };
  for (auto [in, out] : pairs) CHECK_MESSAGE(PorterStem(in) == out, in);
}

TEST_CASE("porter leaves short and non-alphabetic words alone") {
  CHECK(PorterStem("a") == "a");
  CHECK(PorterStem("is") == "is");
  CHECK(PorterStem("") == "");
  CHECK(PorterStem("133s") == "133s");
}
