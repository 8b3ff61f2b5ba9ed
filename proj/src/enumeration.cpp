#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "nfstrata/strat.hpp"

namespace nfstrata {

namespace {

std::string variable_of_length(std::size_t len) {
  std::string s(1, 'w');
  s.append(len - 1, '\'');
  return s;
}

// Shared enumeration of the usual-syntax language in length-then-lex order.
// Grows on demand under a mutex; results are append-only so indices are
// stable for the lifetime of the process.
class Enumerator {
 public:
  static Enumerator& instance() {
    static Enumerator e;
    return e;
  }

  EnumeratedFormula at(std::size_t index, const CodecLimits& limits) {
    std::lock_guard<std::mutex> lock(mu_);
    while (flat_.size() <= index) {
      if (flat_.size() >= limits.max_enumerated) {
        throw ResourceLimitError("formula enumeration bound exceeded");
      }
      append_next_length();
    }
    return flat_[index];
  }

  std::vector<std::string> of_length(std::size_t length) {
    std::lock_guard<std::mutex> lock(mu_);
    ensure_level(length);
    return by_len_[length];
  }

 private:
  // All formulae of exactly length L, built from the strictly shorter
  // levels: atoms v=v / v:v, implications [f>g] and quantifications [Av]f.
  std::vector<std::string> build_level(std::size_t L) {
    std::vector<std::string> out;
    if (L == 1) out.push_back("F");
    if (L >= 3) {
      for (std::size_t a = 1; a + 2 <= L; ++a) {
        std::size_t b = L - 1 - a;
        std::string lv = variable_of_length(a);
        std::string rv = variable_of_length(b);
        out.push_back(lv + "=" + rv);
        out.push_back(lv + ":" + rv);
      }
    }
    if (L >= 5) {
      for (std::size_t l1 = 1; l1 + 4 <= L; ++l1) {
        std::size_t l2 = L - 3 - l1;
        for (const auto& f1 : by_len_[l1]) {
          for (const auto& f2 : by_len_[l2]) {
            out.push_back("[" + f1 + ">" + f2 + "]");
          }
        }
      }
      for (std::size_t vl = 1; vl + 4 <= L; ++vl) {
        std::string head = "[A" + variable_of_length(vl) + "]";
        for (const auto& body : by_len_[L - 3 - vl]) {
          out.push_back(head + body);
        }
      }
    }
    std::sort(out.begin(), out.end(),
              [](const std::string& a, const std::string& b) { return lex_less(a, b); });
    return out;
  }

  void ensure_level(std::size_t L) {
    while (by_len_.size() <= L) {
      std::size_t next = by_len_.size();
      by_len_.push_back(build_level(next));
    }
  }

  void append_next_length() {
    ensure_level(next_len_);
    for (const auto& text : by_len_[next_len_]) {
      auto parsed = parse_usual(text);
      flat_.push_back({text, is_stratified(*parsed.value())});
    }
    ++next_len_;
  }

  std::mutex mu_;
  std::vector<std::vector<std::string>> by_len_;
  std::vector<EnumeratedFormula> flat_;
  std::size_t next_len_ = 0;
};

}  // namespace

EnumeratedFormula enumerated_formula(std::size_t index, const CodecLimits& limits) {
  return Enumerator::instance().at(index, limits);
}

std::vector<std::string> formulae_of_length(std::size_t length) {
  return Enumerator::instance().of_length(length);
}

std::uint64_t star_encode(const Formula<UsualVariable>& f, const CodecLimits& limits) {
  std::string target = render(f);
  std::uint64_t stratified_before = 0;
  std::uint64_t unstratified_before = 0;
  for (std::size_t i = 0;; ++i) {
    EnumeratedFormula e = enumerated_formula(i, limits);
    if (e.text == target) {
      return e.stratified ? 2 * stratified_before : 2 * unstratified_before + 1;
    }
    if (e.text.size() > target.size()) {
      throw std::logic_error("rendered formula missing from enumeration");
    }
    ++(e.stratified ? stratified_before : unstratified_before);
  }
}

UsualFormula star_decode(std::uint64_t code, const CodecLimits& limits) {
  if (code > limits.max_codes) {
    throw ResourceLimitError("star code exceeds the configured bound");
  }
  bool want_stratified = code % 2 == 0;
  std::uint64_t remaining = code / 2;
  for (std::size_t i = 0;; ++i) {
    EnumeratedFormula e = enumerated_formula(i, limits);
    if (e.stratified != want_stratified) continue;
    if (remaining == 0) return std::move(parse_usual(e.text).value());
    --remaining;
  }
}

}  // namespace nfstrata
