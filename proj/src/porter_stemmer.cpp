// Copyright 2026 The tgkit Authors
// SPDX-License-Identifier: Apache-2.0

// Porter, "An algorithm for suffix stripping", Program 14(3), 1980.

#include <string>
#include <string_view>

#include "tgkit/metrics.hpp"

namespace tgkit {
namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string_view word) : b_(word) {}

  std::string Run() {
    if (b_.size() <= 2) return b_;
    Step1ab();
    if (b_.size() > 1) {
      Step1c();
      Step2();
      Step3();
      Step4();
      Step5();
    }
    return b_;
  }

 private:
  // True when b_[i] is a consonant.
  bool Cons(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u': return false;
      case 'y': return i == 0 ? true : !Cons(i - 1);
      default: return true;
    }
  }

  // Number of VC sequences in b_[0, j_].
  int Measure() const {
    int n = 0;
    std::size_t i = 0;
    for (;;) {
      if (i > j_) return n;
      if (!Cons(i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > j_) return n;
        if (Cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > j_) return n;
        if (!Cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool VowelInStem() const {
    for (std::size_t i = 0; i <= j_; ++i) {
      if (!Cons(i)) return true;
    }
    return false;
  }

  bool DoubleCons(std::size_t j) const {
    return j >= 1 && b_[j] == b_[j - 1] && Cons(j);
  }

  // consonant-vowel-consonant ending at i, last not w/x/y.
  bool Cvc(std::size_t i) const {
    if (i < 2 || !Cons(i) || Cons(i - 1) || !Cons(i - 2)) return false;
    const char ch = b_[i];
    return !(ch == 'w' || ch == 'x' || ch == 'y');
  }

  // On match, j_ becomes the index before the suffix.
  bool Ends(std::string_view s) {
    if (s.size() > k() + 1) return false;
    if (b_.compare(b_.size() - s.size(), s.size(), s) != 0) return false;
    const std::size_t stem_len = b_.size() - s.size();
    stem_len_ = stem_len;
    j_ = stem_len == 0 ? kNone : stem_len - 1;
    return true;
  }

  void SetTo(std::string_view s) { b_.replace(stem_len_, std::string::npos, s); }

  void R(std::string_view s) {
    if (MeasureStem() > 0) SetTo(s);
  }

  int MeasureStem() const { return stem_len_ == 0 ? 0 : Measure(); }
  bool VowelInStemSafe() const { return stem_len_ != 0 && VowelInStem(); }

  std::size_t k() const { return b_.size() - 1; }

  void Step1ab() {
    if (b_.back() == 's') {
      if (Ends("sses")) {
        b_.resize(b_.size() - 2);
      } else if (Ends("ies")) {
        SetTo("i");
      } else if (b_.size() >= 2 && b_[b_.size() - 2] != 's') {
        b_.pop_back();
      }
    }
    if (Ends("eed")) {
      if (MeasureStem() > 0) b_.pop_back();
    } else if ((Ends("ed") || Ends("ing")) && VowelInStemSafe()) {
      b_.resize(stem_len_);
      stem_len_ = b_.size();
      j_ = b_.size() - 1;
      if (Ends("at")) {
        SetTo("ate");
      } else if (Ends("bl")) {
        SetTo("ble");
      } else if (Ends("iz")) {
        SetTo("ize");
      } else if (DoubleCons(k())) {
        const char ch = b_.back();
        if (ch != 'l' && ch != 's' && ch != 'z') b_.pop_back();
      } else {
        stem_len_ = b_.size();
        j_ = k();
        if (Measure() == 1 && Cvc(k())) b_.push_back('e');
      }
    }
  }

  void Step1c() {
    if (Ends("y") && VowelInStemSafe()) b_.back() = 'i';
  }

  void Step2() {
    if (b_.size() < 2) return;
    switch (b_[b_.size() - 2]) {
      case 'a':
        if (Ends("ational")) { R("ate"); break; }
        if (Ends("tional")) { R("tion"); break; }
        break;
      case 'c':
        if (Ends("enci")) { R("ence"); break; }
        if (Ends("anci")) { R("ance"); break; }
        break;
      case 'e':
        if (Ends("izer")) { R("ize"); break; }
        break;
      case 'l':
        if (Ends("bli")) { R("ble"); break; }
        if (Ends("alli")) { R("al"); break; }
        if (Ends("entli")) { R("ent"); break; }
        if (Ends("eli")) { R("e"); break; }
        if (Ends("ousli")) { R("ous"); break; }
        break;
      case 'o':
        if (Ends("ization")) { R("ize"); break; }
        if (Ends("ation")) { R("ate"); break; }
        if (Ends("ator")) { R("ate"); break; }
        break;
      case 's':
        if (Ends("alism")) { R("al"); break; }
        if (Ends("iveness")) { R("ive"); break; }
        if (Ends("fulness")) { R("ful"); break; }
        if (Ends("ousness")) { R("ous"); break; }
        break;
      case 't':
        if (Ends("aliti")) { R("al"); break; }
        if (Ends("iviti")) { R("ive"); break; }
        if (Ends("biliti")) { R("ble"); break; }
        break;
      case 'g':
        if (Ends("logi")) { R("log"); break; }
        break;
      default:
        break;
    }
  }

  void Step3() {
    switch (b_.back()) {
      case 'e':
        if (Ends("icate")) { R("ic"); break; }
        if (Ends("ative")) { R(""); break; }
        if (Ends("alize")) { R("al"); break; }
        break;
      case 'i':
        if (Ends("iciti")) { R("ic"); break; }
        break;
      case 'l':
        if (Ends("ical")) { R("ic"); break; }
        if (Ends("ful")) { R(""); break; }
        break;
      case 's':
        if (Ends("ness")) { R(""); break; }
        break;
      default:
        break;
    }
  }

  void Step4() {
    if (b_.size() < 2) return;
    bool matched = false;
    switch (b_[b_.size() - 2]) {
      case 'a': matched = Ends("al"); break;
      case 'c': matched = Ends("ance") || Ends("ence"); break;
      case 'e': matched = Ends("er"); break;
      case 'i': matched = Ends("ic"); break;
      case 'l': matched = Ends("able") || Ends("ible"); break;
      case 'n':
        matched = Ends("ant") || Ends("ement") || Ends("ment") || Ends("ent");
        break;
      case 'o':
        if (Ends("ion")) {
          matched = stem_len_ > 0 && (b_[stem_len_ - 1] == 's' || b_[stem_len_ - 1] == 't');
        } else {
          matched = Ends("ou");
        }
        break;
      case 's': matched = Ends("ism"); break;
      case 't': matched = Ends("ate") || Ends("iti"); break;
      case 'u': matched = Ends("ous"); break;
      case 'v': matched = Ends("ive"); break;
      case 'z': matched = Ends("ize"); break;
      default: break;
    }
    if (matched && MeasureStem() > 1) b_.resize(stem_len_);
  }

  void Step5() {
    stem_len_ = b_.size();
    j_ = k();
    if (b_.back() == 'e') {
      stem_len_ = b_.size() - 1;
      j_ = stem_len_ == 0 ? kNone : stem_len_ - 1;
      const int m = MeasureStem();
      if (m > 1 || (m == 1 && !(stem_len_ >= 1 && Cvc(stem_len_ - 1)))) b_.pop_back();
    }
    if (b_.back() == 'l' && DoubleCons(k())) {
      stem_len_ = b_.size();
      j_ = k();
      if (Measure() > 1) b_.pop_back();
    }
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::string b_;
  std::size_t j_ = 0;
  std::size_t stem_len_ = 0;
};

}  // namespace

std::string PorterStem(std::string_view word) {
  for (char c : word) {
    if (c < 'a' || c > 'z') return std::string(word);
  }
  return Stemmer(word).Run();
}

}  // namespace tgkit
