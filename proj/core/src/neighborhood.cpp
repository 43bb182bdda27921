#include "catmorph/neighborhood.hpp"

#include <algorithm>

namespace catmorph {

Neighborhood::Neighborhood(const Shape& shape, const StructuringElement& se)
    : shape_(shape), offsets_(se.offsets(shape.rank())) {
  std::ptrdiff_t stride[kMaxRank] = {0, 0, 0};
  std::ptrdiff_t s = 1;
  for (std::size_t a = shape_.rank(); a-- > 0;) {
    stride[a] = s;
    s *= static_cast<std::ptrdiff_t>(shape_.extent(a));
  }
  linear_.reserve(offsets_.size());
  for (const Coord& y : offsets_) {
    std::ptrdiff_t d = 0;
    for (std::size_t a = 0; a < kMaxRank; ++a) {
      d += y[a] * stride[a];
      lo_[a] = std::min(lo_[a], y[a]);
      hi_[a] = std::max(hi_[a], y[a]);
    }
    linear_.push_back(d);
  }
}

bool Neighborhood::interior(const Coord& c) const noexcept {
  for (std::size_t a = 0; a < shape_.rank(); ++a) {
    const auto ext = static_cast<std::ptrdiff_t>(shape_.extent(a));
    if (c[a] + lo_[a] < 0 || c[a] + hi_[a] >= ext) return false;
  }
  return true;
}

}  // namespace catmorph
