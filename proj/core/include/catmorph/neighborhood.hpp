#pragma once

#include <cstddef>
#include <vector>

#include "catmorph/shape.hpp"
#include "catmorph/structuring_element.hpp"

namespace catmorph {

/// Structuring element bound to an image shape: visits the in-domain pixels
/// y with y - x in B for a given x. Out-of-domain offsets are skipped
/// (neighborhood clipping).
class Neighborhood {
 public:
  Neighborhood(const Shape& shape, const StructuringElement& se);

  const Shape& shape() const noexcept { return shape_; }
  const std::vector<Coord>& offsets() const noexcept { return offsets_; }

  /// Calls visit(q) for each in-domain neighbor q of pixel p, in the order
  /// of offsets() (increasing norm).
  template <class Visit>
  void for_each(std::size_t p, Visit&& visit) const {
    const Coord c = shape_.coord(p);
    if (interior(c)) {
      for (std::ptrdiff_t d : linear_) visit(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(p) + d));
      return;
    }
    for (const Coord& y : offsets_) {
      const Coord q = c + y;
      if (shape_.contains(q)) visit(shape_.index(q));
    }
  }

 private:
  bool interior(const Coord& c) const noexcept;

  Shape shape_;
  std::vector<Coord> offsets_;
  std::vector<std::ptrdiff_t> linear_;
  Coord lo_{0, 0, 0};
  Coord hi_{0, 0, 0};
};

}  // namespace catmorph
