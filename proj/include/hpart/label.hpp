#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>

namespace hpart {

/// One of the four classes of an H-partition.
enum class Label : std::uint8_t { A = 0, B = 1, C = 2, D = 3 };

inline constexpr std::array<Label, 4> kLabels{Label::A, Label::B, Label::C, Label::D};

constexpr int index_of(Label l) noexcept { return static_cast<int>(l); }

constexpr Label label_at(int i) noexcept { return static_cast<Label>(i); }

/// Serialized form: lowercase letter.
constexpr char to_char(Label l) noexcept { return static_cast<char>('a' + index_of(l)); }

constexpr char to_upper_char(Label l) noexcept { return static_cast<char>('A' + index_of(l)); }

constexpr std::optional<Label> label_from_char(char c) noexcept {
  if (c >= 'a' && c <= 'd') return label_at(c - 'a');
  if (c >= 'A' && c <= 'D') return label_at(c - 'A');
  return std::nullopt;
}

enum class EdgeKind : std::uint8_t { Full, Dotted };

constexpr const char* to_string(EdgeKind k) noexcept {
  return k == EdgeKind::Full ? "full" : "dotted";
}

/// Subset of {A,B,C,D}, stored as a 4-bit mask.
class LabelSet {
 public:
  constexpr LabelSet() = default;
  constexpr LabelSet(std::initializer_list<Label> labels) {
    for (Label l : labels) insert(l);
  }

  static constexpr LabelSet from_bits(unsigned bits) noexcept {
    LabelSet s;
    s.bits_ = static_cast<std::uint8_t>(bits & 0xFu);
    return s;
  }
  static constexpr LabelSet all() noexcept { return from_bits(0xFu); }

  constexpr unsigned bits() const noexcept { return bits_; }
  constexpr bool contains(Label l) const noexcept { return (bits_ >> index_of(l)) & 1u; }
  constexpr void insert(Label l) noexcept { bits_ |= static_cast<std::uint8_t>(1u << index_of(l)); }
  constexpr void erase(Label l) noexcept { bits_ &= static_cast<std::uint8_t>(~(1u << index_of(l))); }
  constexpr int size() const noexcept { return std::popcount(static_cast<unsigned>(bits_)); }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool trivial() const noexcept { return size() == 1; }
  constexpr bool is_subset_of(LabelSet o) const noexcept { return (bits_ & ~o.bits_) == 0; }

  /// Smallest member; precondition: non-empty.
  constexpr Label first() const noexcept {
    return label_at(std::countr_zero(static_cast<unsigned>(bits_)));
  }

  constexpr LabelSet operator|(LabelSet o) const noexcept { return from_bits(bits_ | o.bits_); }
  constexpr LabelSet operator&(LabelSet o) const noexcept { return from_bits(bits_ & o.bits_); }
  constexpr LabelSet operator-(LabelSet o) const noexcept { return from_bits(bits_ & ~o.bits_); }
  constexpr LabelSet operator~() const noexcept { return from_bits(~bits_); }
  constexpr LabelSet& operator|=(LabelSet o) noexcept { return *this = *this | o; }
  constexpr LabelSet& operator&=(LabelSet o) noexcept { return *this = *this & o; }
  constexpr LabelSet& operator-=(LabelSet o) noexcept { return *this = *this - o; }
  constexpr bool operator==(const LabelSet&) const noexcept = default;
  constexpr auto operator<=>(const LabelSet&) const noexcept = default;

  /// Concatenated labels, e.g. "ABD"; "{}" for the empty set.
  std::string to_string() const {
    if (empty()) return "{}";
    std::string s;
    for (Label l : kLabels)
      if (contains(l)) s.push_back(to_upper_char(l));
    return s;
  }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (Label l : kLabels)
      if (contains(l)) f(l);
  }

 private:
  std::uint8_t bits_ = 0;
};

}  // namespace hpart
