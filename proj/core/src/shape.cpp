#include "catmorph/shape.hpp"

#include <sstream>

#include "catmorph/error.hpp"

namespace catmorph {

Shape::Shape(std::initializer_list<std::size_t> extents)
    : Shape(std::span<const std::size_t>(extents.begin(), extents.size())) {}

Shape::Shape(std::span<const std::size_t> extents) {
  if (extents.empty() || extents.size() > kMaxRank) {
    throw ArgumentError("shape rank must be 1, 2 or 3, got " +
                        std::to_string(extents.size()));
  }
  rank_ = extents.size();
  for (std::size_t a = 0; a < rank_; ++a) {
    if (extents[a] == 0) {
      throw ArgumentError("shape extents must be >= 1");
    }
    extents_[a] = extents[a];
  }
}

Coord Shape::coord(std::size_t index) const noexcept {
  Coord c{0, 0, 0};
  for (std::size_t a = rank_; a-- > 0;) {
    c[a] = static_cast<std::ptrdiff_t>(index % extents_[a]);
    index /= extents_[a];
  }
  return c;
}

std::size_t Shape::index(const Coord& c) const noexcept {
  std::size_t idx = 0;
  for (std::size_t a = 0; a < rank_; ++a) {
    idx = idx * extents_[a] + static_cast<std::size_t>(c[a]);
  }
  return idx;
}

bool Shape::contains(const Coord& c) const noexcept {
  for (std::size_t a = 0; a < kMaxRank; ++a) {
    if (a < rank_) {
      if (c[a] < 0 || static_cast<std::size_t>(c[a]) >= extents_[a]) return false;
    } else if (c[a] != 0) {
      return false;
    }
  }
  return true;
}

std::string Shape::to_string() const {
  std::ostringstream os;
  for (std::size_t a = 0; a < rank_; ++a) {
    if (a) os << 'x';
    os << extents_[a];
  }
  return os.str();
}

}  // namespace catmorph
