#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "catmorph/image.hpp"
#include "catmorph/structuring_element.hpp"

/// Distances on grid domains with excluded pixels.
namespace catmorph::geodesic {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Pixels that belong to the domain.
class DomainMask {
 public:
  DomainMask() = default;
  explicit DomainMask(Shape shape, bool fill = true);
  DomainMask(Shape shape, std::vector<std::uint8_t> inside);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return inside_.size(); }
  bool operator[](std::size_t p) const noexcept { return inside_[p] != 0; }
  void set(std::size_t p, bool inside) { inside_.at(p) = inside ? 1 : 0; }
  std::size_t count() const noexcept;

 private:
  Shape shape_;
  std::vector<std::uint8_t> inside_;
};

/// Per-pixel distance in pixels; kUnreachable outside the seeds' component.
using DistanceField = ScalarField;

/// Edge set of the pixel graph.
enum class Metric {
  city_block,  ///< axial steps of length 1
  chessboard,  ///< axial and diagonal steps of length 1
  octagonal,   ///< axial and diagonal steps of Euclidean length (1, sqrt 2, sqrt 3)
};

/// The graph metric whose unobstructed balls match balls of `norm`
/// (exactly for city-block and chessboard, approximately for Euclidean).
Metric metric_for(Norm norm) noexcept;

/// Exact shortest paths on the pixel graph restricted to `mask`. Exploration
/// stops beyond `cap`; pixels past it stay kUnreachable. Seeds must lie in
/// the mask. An empty seed set gives an all-unreachable field.
DistanceField dijkstra_distance(std::span<const std::size_t> seeds,
                                const DomainMask& mask,
                                Metric metric = Metric::octagonal,
                                double cap = kUnreachable);

/// Unit-speed eikonal distance by fast marching with a second-order upwind
/// update (first order where the second upwind pixel is missing or not
/// monotone). Pixels within 4 of a seed that see it along a straight
/// in-mask line start at their exact Euclidean distance. Pixels joined to
/// the front only through a corner are reached by a straight diagonal
/// step, so reachability equals that of the 8-connected (26 in 3D) pixel
/// graph.
DistanceField fmm_distance(std::span<const std::size_t> seeds,
                           const DomainMask& mask, double cap = kUnreachable);

enum class Solver { graph, fmm };

/// Repeated capped single-source searches sharing scratch buffers. Not
/// thread-safe; use one instance per thread.
class BallSearch {
 public:
  BallSearch(const DomainMask& mask, Solver solver, Metric metric);

  struct Hit {
    std::size_t pixel;
    double distance;
  };

  /// Every in-mask pixel within geodesic distance `radius` of `x` (plus
  /// kBallSlack), in order of acceptance (non-decreasing distance). Empty
  /// when x is outside the mask. The span is valid until the next query.
  std::span<const Hit> query(std::size_t x, double radius);

  /// Multi-source search from `seeds` (all in the mask) up to `cap`.
  std::span<const Hit> propagate(std::span<const std::size_t> seeds, double cap);

  /// Distance of a pixel found by the last search, else kUnreachable.
  double distance(std::size_t p) const noexcept {
    return state_[p] == kAccepted ? dist_[p] : kUnreachable;
  }

 private:
  struct Step {
    Coord offset;
    double length;
    bool axial;
  };

  static constexpr std::uint8_t kFar = 0;
  static constexpr std::uint8_t kTrial = 1;
  static constexpr std::uint8_t kAccepted = 2;
  /// Trial value that is already exact and must not be lowered.
  static constexpr std::uint8_t kFixed = 3;
  /// Pixels this close to a seed, in straight view of it, start exact.
  static constexpr double kExactRadius = 4.0;

  void reset();
  void run_graph(double cap);
  void run_fmm(double cap);
  void seed_exact_disc();
  bool visible(const Coord& from, const Coord& offset) const;
  double eikonal_update(std::size_t q) const;

  const DomainMask* mask_;
  Solver solver_;
  Metric metric_;
  std::vector<Step> steps_;
  std::vector<double> dist_;
  std::vector<std::uint8_t> state_;
  std::vector<std::size_t> touched_;
  std::vector<Hit> hits_;
};

/// Pixels y of the mask with d(x, y) <= r, sorted by index. Empty when x is
/// outside the mask; r = 0 gives {x}.
std::vector<std::size_t> geodesic_ball_query(std::size_t x, double r,
                                             const DomainMask& mask,
                                             Solver solver = Solver::graph,
                                             Metric metric = Metric::octagonal);

}  // namespace catmorph::geodesic
