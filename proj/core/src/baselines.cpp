#include "catmorph/baselines.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "catmorph/neighborhood.hpp"

namespace catmorph::baseline {
namespace {

void require_plain_labels(const LabelImage& f, Label i) {
  if (f.has_sentinels()) {
    throw ArgumentError("n-ary morphology needs labels without bottom/top");
  }
  if (i < 0 || static_cast<std::size_t>(i) >= f.categories()) {
    throw ArgumentError("category " + std::to_string(i) + " out of range");
  }
}

// Shared case analysis of the label lattice: `conflict` is returned when the
// neighborhood holds `absorbing` or more than one category, `empty_value`
// when it holds no category at all.
LabelImage label_op(const LabelImage& f, const StructuringElement& se,
                    Label absorbing, Label conflict, Label empty_value) {
  const Neighborhood nb(f.shape(), se);
  std::vector<Label> out(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) {
    bool absorbed = false;
    Label unique = kBottom;
    bool multiple = false;
    nb.for_each(p, [&](std::size_t q) {
      const Label v = f[q];
      if (v == absorbing) {
        absorbed = true;
      } else if (v >= 0) {
        if (unique < 0) {
          unique = v;
        } else if (unique != v) {
          multiple = true;
        }
      }
    });
    if (absorbed || multiple) {
      out[p] = conflict;
    } else if (unique >= 0) {
      out[p] = unique;
    } else {
      out[p] = empty_value;
    }
  }
  return LabelImage(f.shape(), f.categories(), std::move(out));
}

}  // namespace

SetImage set_dilate(const SetImage& f, const StructuringElement& se) {
  const Neighborhood nb(f.shape(), se);
  std::vector<CategoryBits> out(f.size(), 0);
  for (std::size_t p = 0; p < f.size(); ++p) {
    CategoryBits acc = 0;
    nb.for_each(p, [&](std::size_t q) { acc |= f[q]; });
    out[p] = acc;
  }
  return SetImage(f.shape(), f.categories(), std::move(out));
}

SetImage set_erode(const SetImage& f, const StructuringElement& se) {
  const Neighborhood nb(f.shape(), se);
  std::vector<CategoryBits> out(f.size(), 0);
  for (std::size_t p = 0; p < f.size(); ++p) {
    CategoryBits acc = ~CategoryBits{0};
    bool any = false;
    nb.for_each(p, [&](std::size_t q) {
      acc &= f[q];
      any = true;
    });
    out[p] = any ? acc : 0;
  }
  return SetImage(f.shape(), f.categories(), std::move(out));
}

LabelImage label_dilate(const LabelImage& f, const StructuringElement& se) {
  return label_op(f, se, kTop, kTop, kBottom);
}

LabelImage label_erode(const LabelImage& f, const StructuringElement& se) {
  return label_op(f, se, kBottom, kBottom, kTop);
}

LabelImage nary_dilate(const LabelImage& f, Label i, const StructuringElement& se) {
  require_plain_labels(f, i);
  const Neighborhood nb(f.shape(), se);
  std::vector<Label> out(f.labels().begin(), f.labels().end());
  for (std::size_t p = 0; p < f.size(); ++p) {
    bool hit = false;
    nb.for_each(p, [&](std::size_t q) { hit = hit || f[q] == i; });
    if (hit) out[p] = i;
  }
  return LabelImage(f.shape(), f.categories(), std::move(out));
}

NaryErodeResult nary_erode_report(const LabelImage& f, Label i,
                                  const StructuringElement& se,
                                  const NaryErodeOptions& options) {
  require_plain_labels(f, i);
  const Shape& shape = f.shape();
  const auto offsets = se.offsets(shape.rank());
  std::vector<Label> out(f.labels().begin(), f.labels().end());
  std::vector<std::size_t> ambiguous;

  auto rank_of = [&](Label c) {
    auto it = std::find(options.ranking.begin(), options.ranking.end(), c);
    return it == options.ranking.end() ? std::numeric_limits<std::ptrdiff_t>::max()
                                       : it - options.ranking.begin();
  };

  for (std::size_t p = 0; p < f.size(); ++p) {
    if (f[p] != i) continue;
    const Coord c = shape.coord(p);
    double best = std::numeric_limits<double>::infinity();
    std::vector<Label> nearest;
    for (const Coord& y : offsets) {
      const Coord q = c + y;
      if (!shape.contains(q)) continue;
      const Label v = f[shape.index(q)];
      if (v == i) continue;
      const double d = norm_of(y, options.distance, shape.rank());
      if (d < best - kBallSlack) {
        best = d;
        nearest.assign(1, v);
      } else if (d <= best + kBallSlack &&
                 std::find(nearest.begin(), nearest.end(), v) == nearest.end()) {
        nearest.push_back(v);
      }
    }
    if (nearest.empty()) continue;  // neighborhood entirely i
    if (nearest.size() == 1) {
      out[p] = nearest.front();
      continue;
    }
    auto winner = std::min_element(nearest.begin(), nearest.end(),
                                   [&](Label a, Label b) { return rank_of(a) < rank_of(b); });
    const auto winner_rank = rank_of(*winner);
    const bool decided =
        winner_rank != std::numeric_limits<std::ptrdiff_t>::max() &&
        std::count_if(nearest.begin(), nearest.end(),
                      [&](Label a) { return rank_of(a) == winner_rank; }) == 1;
    if (decided) {
      out[p] = *winner;
    } else {
      out[p] = kTop;
      ambiguous.push_back(p);
    }
  }
  return {LabelImage(shape, f.categories(), std::move(out)), std::move(ambiguous)};
}

LabelImage nary_erode(const LabelImage& f, Label i, const StructuringElement& se,
                      const NaryErodeOptions& options) {
  auto result = nary_erode_report(f, i, se, options);
  if (!result.ambiguous.empty()) {
    const std::size_t p = result.ambiguous.front();
    throw AmbiguousThetaError(
        p, "ambiguous theta at pixel " + std::to_string(p) +
               ": several categories are equally close and no ranking decides");
  }
  return std::move(result.labels);
}

}  // namespace catmorph::baseline
