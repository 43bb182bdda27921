#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

namespace catmorph {

inline constexpr std::size_t kMaxRank = 3;

/// Integer pixel coordinate (or offset). Entries past the image rank are 0.
using Coord = std::array<std::ptrdiff_t, kMaxRank>;

/// Extents of a dense row-major grid with 1 to 3 axes; the last axis varies
/// fastest.
class Shape {
 public:
  Shape() = default;
  Shape(std::initializer_list<std::size_t> extents);
  explicit Shape(std::span<const std::size_t> extents);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t extent(std::size_t axis) const { return extents_.at(axis); }
  std::span<const std::size_t> extents() const noexcept {
    return {extents_.data(), rank_};
  }
  std::size_t pixel_count() const noexcept {
    return extents_[0] * extents_[1] * extents_[2];
  }

  Coord coord(std::size_t index) const noexcept;
  std::size_t index(const Coord& c) const noexcept;
  bool contains(const Coord& c) const noexcept;

  std::string to_string() const;

  bool operator==(const Shape& other) const = default;

 private:
  // Padded to kMaxRank with 1 so index arithmetic never branches on rank.
  std::array<std::size_t, kMaxRank> extents_{1, 1, 1};
  std::size_t rank_ = 0;
};

inline Coord operator+(const Coord& a, const Coord& b) noexcept {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

inline Coord operator-(const Coord& a, const Coord& b) noexcept {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

}  // namespace catmorph
