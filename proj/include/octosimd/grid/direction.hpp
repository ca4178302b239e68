#pragma once

#include <array>
#include <cstddef>

namespace octosimd::grid {

// One of the 26 lattice directions d in {-1,0,1}^3 without the origin.
struct Direction {
  int dx = 0;
  int dy = 0;
  int dz = 0;

  constexpr int component(int axis) const { return axis == 0 ? dx : axis == 1 ? dy : dz; }
  constexpr Direction operator-() const { return {-dx, -dy, -dz}; }
  friend constexpr bool operator==(const Direction&, const Direction&) = default;
};

inline constexpr std::size_t kDirections = 26;

constexpr std::size_t direction_index(Direction d) {
  const std::size_t i = static_cast<std::size_t>((d.dx + 1) + 3 * (d.dy + 1) + 9 * (d.dz + 1));
  return i < 13 ? i : i - 1;
}

constexpr Direction direction_at(std::size_t index) {
  const int i = static_cast<int>(index < 13 ? index : index + 1);
  return {i % 3 - 1, (i / 3) % 3 - 1, i / 9 - 1};
}

inline constexpr std::array<Direction, kDirections> all_directions = [] {
  std::array<Direction, kDirections> a{};
  for (std::size_t i = 0; i < kDirections; ++i) a[i] = direction_at(i);
  return a;
}();

}  // namespace octosimd::grid
