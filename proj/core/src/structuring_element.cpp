#include "catmorph/structuring_element.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <tuple>

#include "catmorph/error.hpp"

namespace catmorph {

std::string_view to_string(Norm norm) noexcept {
  switch (norm) {
    case Norm::euclidean: return "euclidean";
    case Norm::city_block: return "city-block";
    case Norm::chessboard: return "chessboard";
  }
  return "euclidean";
}

Norm parse_norm(std::string_view text) {
  if (text == "euclidean" || text == "l2") return Norm::euclidean;
  if (text == "city-block" || text == "cityblock" || text == "l1") return Norm::city_block;
  if (text == "chessboard" || text == "linf") return Norm::chessboard;
  throw ArgumentError("unknown norm '" + std::string(text) + "'");
}

double norm_of(const Coord& offset, Norm norm, std::size_t rank) noexcept {
  double acc = 0.0;
  for (std::size_t a = 0; a < rank; ++a) {
    const double v = std::abs(static_cast<double>(offset[a]));
    switch (norm) {
      case Norm::euclidean: acc += v * v; break;
      case Norm::city_block: acc += v; break;
      case Norm::chessboard: acc = std::max(acc, v); break;
    }
  }
  return norm == Norm::euclidean ? std::sqrt(acc) : acc;
}

StructuringElement StructuringElement::ball(double radius, Norm norm) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ArgumentError("ball radius must be finite and > 0");
  }
  StructuringElement se;
  se.is_ball_ = true;
  se.radius_ = radius;
  se.norm_ = norm;
  return se;
}

StructuringElement StructuringElement::from_offsets(std::vector<Coord> offsets,
                                                    bool include_origin) {
  if (include_origin &&
      std::find(offsets.begin(), offsets.end(), Coord{0, 0, 0}) == offsets.end()) {
    offsets.push_back(Coord{0, 0, 0});
  }
  if (offsets.empty()) throw ArgumentError("structuring element has no offsets");
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  StructuringElement se;
  se.explicit_ = std::move(offsets);
  return se;
}

StructuringElement StructuringElement::origin() {
  return from_offsets({Coord{0, 0, 0}});
}

bool StructuringElement::contains_origin() const noexcept {
  if (is_ball_) return true;
  return std::binary_search(explicit_.begin(), explicit_.end(), Coord{0, 0, 0});
}

std::vector<Coord> StructuringElement::offsets(std::size_t rank) const {
  if (rank == 0 || rank > kMaxRank) throw ArgumentError("rank must be 1..3");
  std::vector<Coord> out;
  if (is_ball_) {
    const auto reach = static_cast<std::ptrdiff_t>(std::floor(radius_ + kBallSlack));
    const std::ptrdiff_t r0 = reach;
    const std::ptrdiff_t r1 = rank > 1 ? reach : 0;
    const std::ptrdiff_t r2 = rank > 2 ? reach : 0;
    for (std::ptrdiff_t a = -r0; a <= r0; ++a)
      for (std::ptrdiff_t b = -r1; b <= r1; ++b)
        for (std::ptrdiff_t c = -r2; c <= r2; ++c) {
          const Coord y{a, b, c};
          if (norm_of(y, norm_, rank) <= radius_ + kBallSlack) out.push_back(y);
        }
  } else {
    for (const Coord& y : explicit_) {
      for (std::size_t a = rank; a < kMaxRank; ++a) {
        if (y[a] != 0) {
          throw ArgumentError("structuring element offset has more axes than the image");
        }
      }
      out.push_back(y);
    }
  }
  const Norm order = is_ball_ ? norm_ : Norm::euclidean;
  std::stable_sort(out.begin(), out.end(), [&](const Coord& l, const Coord& r) {
    return std::make_tuple(norm_of(l, order, rank), l) <
           std::make_tuple(norm_of(r, order, rank), r);
  });
  return out;
}

bool StructuringElement::is_symmetric(std::size_t rank) const {
  if (is_ball_) return true;
  auto offs = offsets(rank);
  std::set<Coord> all(offs.begin(), offs.end());
  return std::all_of(offs.begin(), offs.end(), [&](const Coord& y) {
    return all.count(Coord{-y[0], -y[1], -y[2]}) > 0;
  });
}

std::string StructuringElement::describe() const {
  std::ostringstream os;
  if (is_ball_) {
    os << "ball(r=" << radius_ << ", " << to_string(norm_) << ")";
  } else {
    os << "offsets(" << explicit_.size() << ")";
  }
  return os.str();
}

std::vector<double> radius_ladder(Norm norm, double max_radius, std::size_t rank) {
  const auto reach = static_cast<std::ptrdiff_t>(std::floor(max_radius + kBallSlack));
  std::vector<double> levels;
  if (norm != Norm::euclidean) {
    for (std::ptrdiff_t r = 1; r <= reach; ++r) levels.push_back(static_cast<double>(r));
    return levels;
  }
  // Squared Euclidean lengths are integers; collect the distinct ones.
  std::set<long long> squares;
  const std::ptrdiff_t r1 = rank > 1 ? reach : 0;
  const std::ptrdiff_t r2 = rank > 2 ? reach : 0;
  for (std::ptrdiff_t a = 0; a <= reach; ++a)
    for (std::ptrdiff_t b = 0; b <= r1; ++b)
      for (std::ptrdiff_t c = 0; c <= r2; ++c) {
        const long long s = a * a + b * b + c * c;
        if (s > 0 && std::sqrt(static_cast<double>(s)) <= max_radius + kBallSlack) {
          squares.insert(s);
        }
      }
  for (long long s : squares) levels.push_back(std::sqrt(static_cast<double>(s)));
  return levels;
}

}  // namespace catmorph
