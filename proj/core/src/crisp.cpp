#include "catmorph/crisp.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "catmorph/error.hpp"

namespace catmorph {

LabelImage::LabelImage(Shape shape, std::size_t categories,
                       std::vector<Label> labels)
    : shape_(std::move(shape)), categories_(categories), labels_(std::move(labels)) {
  if (categories_ == 0) throw ArgumentError("label image needs >= 1 category");
  if (labels_.size() != shape_.pixel_count()) {
    throw ArgumentError("label count does not match shape " + shape_.to_string());
  }
  for (std::size_t p = 0; p < labels_.size(); ++p) {
    const Label l = labels_[p];
    if (l == kBottom || l == kTop) continue;
    if (l < 0 || static_cast<std::size_t>(l) >= categories_) {
      throw ArgumentError("label " + std::to_string(l) + " at pixel " +
                          std::to_string(p) + " out of range");
    }
  }
}

LabelImage::LabelImage(Shape shape, std::size_t categories, Label fill)
    : LabelImage(shape, categories, std::vector<Label>(shape.pixel_count(), fill)) {}

bool LabelImage::has_sentinels() const noexcept {
  return std::any_of(labels_.begin(), labels_.end(),
                     [](Label l) { return l == kBottom || l == kTop; });
}

SetImage::SetImage(Shape shape, std::size_t categories,
                   std::vector<CategoryBits> bits)
    : shape_(std::move(shape)), categories_(categories), bits_(std::move(bits)) {
  if (categories_ == 0 || categories_ > kMaxSetCategories) {
    throw ArgumentError("set images support 1 to 64 categories");
  }
  if (bits_.size() != shape_.pixel_count()) {
    throw ArgumentError("set count does not match shape " + shape_.to_string());
  }
  if (categories_ < kMaxSetCategories) {
    const CategoryBits allowed = (CategoryBits{1} << categories_) - 1;
    for (std::size_t p = 0; p < bits_.size(); ++p) {
      if (bits_[p] & ~allowed) {
        throw ArgumentError("set at pixel " + std::to_string(p) +
                            " names a category >= " + std::to_string(categories_));
      }
    }
  }
}

}  // namespace catmorph
