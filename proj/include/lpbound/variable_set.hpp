// Copyright (c) 2026 The lpbound authors.
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy
// of the License at http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace lpbound {

// Hard ceiling on query variables; set functions have 2^n entries.
inline constexpr unsigned kMaxVariables = 20;

// Subset of the query variables 0..n-1 as a bitmask.
class VariableSet {
 public:
  constexpr VariableSet() = default;
  constexpr explicit VariableSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr VariableSet singleton(unsigned variable) { return VariableSet(1u << variable); }
  static constexpr VariableSet full(unsigned n) { return VariableSet(n == 32 ? ~0u : (1u << n) - 1u); }

  constexpr std::uint32_t bits() const noexcept { return bits_; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr unsigned size() const noexcept { return static_cast<unsigned>(std::popcount(bits_)); }
  constexpr bool contains(unsigned variable) const noexcept { return (bits_ >> variable) & 1u; }
  constexpr bool is_subset_of(VariableSet other) const noexcept { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(VariableSet other) const noexcept { return (bits_ & other.bits_) != 0; }

  constexpr VariableSet with(unsigned variable) const noexcept { return VariableSet(bits_ | (1u << variable)); }
  constexpr VariableSet without(unsigned variable) const noexcept { return VariableSet(bits_ & ~(1u << variable)); }

  std::vector<unsigned> elements() const {
    std::vector<unsigned> out;
    for (std::uint32_t rest = bits_; rest; rest &= rest - 1) out.push_back(static_cast<unsigned>(std::countr_zero(rest)));
    return out;
  }

  friend constexpr VariableSet operator|(VariableSet a, VariableSet b) { return VariableSet(a.bits_ | b.bits_); }
  friend constexpr VariableSet operator&(VariableSet a, VariableSet b) { return VariableSet(a.bits_ & b.bits_); }
  // Set difference.
  friend constexpr VariableSet operator-(VariableSet a, VariableSet b) { return VariableSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(VariableSet a, VariableSet b) = default;
  friend constexpr auto operator<=>(VariableSet a, VariableSet b) = default;

 private:
  std::uint32_t bits_ = 0;
};

}  // namespace lpbound

template <>
struct std::hash<lpbound::VariableSet> {
  std::size_t operator()(lpbound::VariableSet s) const noexcept { return std::hash<std::uint32_t>{}(s.bits()); }
};
