#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "catmorph/shape.hpp"

namespace catmorph {

enum class Norm { euclidean, city_block, chessboard };

std::string_view to_string(Norm norm) noexcept;
/// Accepts "euclidean", "city-block"/"cityblock", "chessboard".
Norm parse_norm(std::string_view text);

/// Length of `offset` under `norm` (only the first `rank` entries count).
double norm_of(const Coord& offset, Norm norm, std::size_t rank) noexcept;

/// Offsets within this distance of the radius are inside a ball, so integer
/// radii include their boundary deterministically.
inline constexpr double kBallSlack = 1e-9;

/// Flat structuring element: a closed ball {y : |y| <= r} under one of three
/// norms, or an explicit list of offsets.
class StructuringElement {
 public:
  static StructuringElement ball(double radius, Norm norm = Norm::euclidean);
  /// Explicit offsets; the origin is added unless `include_origin` is false.
  static StructuringElement from_offsets(std::vector<Coord> offsets,
                                         bool include_origin = true);
  /// The identity element {0}.
  static StructuringElement origin();

  bool is_ball() const noexcept { return is_ball_; }
  double radius() const noexcept { return radius_; }
  Norm norm() const noexcept { return norm_; }
  bool contains_origin() const noexcept;

  /// Materialized offsets for an image of the given rank, sorted by
  /// increasing norm (Euclidean for explicit lists), then lexicographically.
  std::vector<Coord> offsets(std::size_t rank) const;

  /// Whether y in B implies -y in B.
  bool is_symmetric(std::size_t rank) const;

  std::string describe() const;

 private:
  StructuringElement() = default;

  bool is_ball_ = false;
  double radius_ = 0.0;
  Norm norm_ = Norm::euclidean;
  std::vector<Coord> explicit_;
};

/// Distinct ball radii up to `max_radius`: the values of |y| over integer
/// offsets y. Balls only change at these radii.
std::vector<double> radius_ladder(Norm norm, double max_radius, std::size_t rank);

}  // namespace catmorph
