#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace nfstrata {

// Thrown when an operation would exceed a configured resource cap (string
// length, enumeration size, node budget). Callers that care map this to a
// distinct exit status; it never signals a wrong answer.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimal success-or-error carrier. T and E must be distinct types.
template <class T, class E>
class Result {
 public:
  Result(T value) : data_(std::in_place_index<0>, std::move(value)) {}
  Result(E error) : data_(std::in_place_index<1>, std::move(error)) {}

  bool ok() const { return data_.index() == 0; }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<0>(data_); }
  T& value() & { return std::get<0>(data_); }
  T&& value() && { return std::get<0>(std::move(data_)); }
  const E& error() const& { return std::get<1>(data_); }
  E& error() & { return std::get<1>(data_); }

 private:
  std::variant<T, E> data_;
};

// Canonical symbol order shared by everything that sorts surface strings:
// the usual alphabet first, then the enriched extras, then raw byte order.
inline int symbol_rank(char c) {
  constexpr std::string_view order = "[]>A=:wv'*F";
  auto i = order.find(c);
  if (i != std::string_view::npos) return static_cast<int>(i);
  return 64 + static_cast<int>(static_cast<unsigned char>(c));
}

inline bool lex_less(std::string_view a, std::string_view b) {
  std::size_t n = a.size() < b.size() ? a.size() : b.size();
  for (std::size_t i = 0; i < n; ++i) {
    int ra = symbol_rank(a[i]);
    int rb = symbol_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return a.size() < b.size();
}

inline bool length_lex_less(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a, b);
}

// Deterministic, platform-independent RNG (std distributions are not
// reproducible across standard libraries).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound); bound must be nonzero. Rejection sampling keeps
  // the draw unbiased.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [lo, hi] inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

 private:
  std::uint64_t state_;
};

using u128 = unsigned __int128;

// base^exp saturating at UINT64_MAX. Counts compared against these bounds
// never exceed a string length, so saturation preserves every comparison.
inline std::uint64_t pow_saturating_u64(std::uint64_t base, std::uint64_t exp) {
  constexpr std::uint64_t kMax = ~0ull;
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > kMax / base) return kMax;
    result *= base;
  }
  return result;
}

inline std::optional<u128> checked_pow_u128(u128 base, std::uint64_t exp) {
  constexpr u128 kMax = ~static_cast<u128>(0);
  u128 result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > kMax / base) return std::nullopt;
    result *= base;
  }
  return result;
}

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return out;
}

}  // namespace nfstrata
