#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paradox/error.hpp"

namespace paradox {

/// A subset of a small indexed domain {0, ..., n-1}, n <= 64, held as a bitmask.
/// Used for classes over a Structure, rule premises over abstract spaces, and
/// the maps of the diagonal sweep.
class Subset {
 public:
  static constexpr std::size_t max_elements = 64;

  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static constexpr Subset full(std::size_t n) {
    return Subset(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr Subset single(std::size_t i) { return Subset(std::uint64_t{1} << i); }

  constexpr bool contains(std::size_t i) const { return i < 64 && ((bits_ >> i) & 1u) != 0; }
  constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }

  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }

  /// Least element, if any.
  constexpr std::optional<std::size_t> least() const {
    if (bits_ == 0) return std::nullopt;
    return static_cast<std::size_t>(std::countr_zero(bits_));
  }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<std::size_t>(std::countr_zero(b)));
  }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  /// Set difference a \ b.
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(Subset, Subset) = default;
  friend constexpr auto operator<=>(Subset, Subset) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// `{a,b}` using the given element names, or indices when `names` is empty.
inline std::string to_string(Subset s, const std::vector<std::string>& names = {}) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    if (!first) out += ",";
    first = false;
    out += i < names.size() ? names[i] : std::to_string(i);
  });
  return out + "}";
}

inline void require_small_domain(std::size_t n, const char* what) {
  if (n > Subset::max_elements)
    throw budget_error(std::string(what) + ": domain of " + std::to_string(n) +
                       " elements exceeds the 64-element limit");
}

}  // namespace paradox
