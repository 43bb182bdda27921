#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <variant>

#include "catmorph/error.hpp"
#include "catmorph/image.hpp"

/// CATD container: a little-endian tensor file.
///
///     offset  size    field
///     0       4       magic "CATD"
///     4       4       version (u32, = 1)
///     8       4       payload kind (u32: 0 categorical, 1 dirichlet, 2 scalar)
///     12      4       rank d (u32, 1..3)
///     16      4*d     extents (u32 each, >= 1)
///     16+4d   4       channels (u32)
///     20+4d   ...     pixel-major float32 payload, channels innermost
///
/// Values are stored as binary32; images held in double are rounded on
/// write, so a write/read cycle is bit-exact for float-representable data
/// and for any file read back and written again.
namespace catmorph::io {

inline constexpr std::uint32_t kCatdVersion = 1;

enum class PayloadKind : std::uint32_t { categorical = 0, dirichlet = 1, scalar = 2 };

enum class CatdErrc {
  io_failure,
  bad_magic,
  unsupported_version,
  bad_kind,
  bad_header,
  payload_size_mismatch,
  invariant_violation,
};

const char* to_string(CatdErrc code) noexcept;

class CatdError : public DataError {
 public:
  CatdError(CatdErrc code, std::uint64_t offset, const std::string& what);

  CatdErrc code() const noexcept { return code_; }
  /// Byte offset for header errors; pixel index for invariant violations.
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  CatdErrc code_;
  std::uint64_t offset_;
};

using AnyImage = std::variant<CategoricalImage, DirichletImage, ScalarField>;

PayloadKind kind_of(const AnyImage& img) noexcept;
const Shape& shape_of(const AnyImage& img) noexcept;
std::size_t channels_of(const AnyImage& img) noexcept;

void write_catd(const AnyImage& img, std::ostream& out);
void write_catd(const AnyImage& img, const std::filesystem::path& path);

/// Categorical payloads are validated against the simplex (tol 1e-6),
/// Dirichlet payloads for positivity.
AnyImage read_catd(std::istream& in);
AnyImage read_catd(const std::filesystem::path& path);

/// Convenience: read and require a categorical payload.
CategoricalImage read_categorical(const std::filesystem::path& path);

}  // namespace catmorph::io
