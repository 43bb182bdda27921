#include "catmorph/catd.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <vector>

#include "catmorph/simplex.hpp"

namespace catmorph::io {
namespace {

constexpr std::array<char, 4> kMagic{'C', 'A', 'T', 'D'};

void put_u32(std::vector<char>& buf, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
}

std::uint32_t get_u32(const char* p) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(p[b])) << (8 * b);
  }
  return v;
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw ArgumentError(std::string(what) + " does not fit the CATD header");
  }
  return static_cast<std::uint32_t>(v);
}

std::span<const double> values_of(const AnyImage& img) {
  return std::visit(
      [](const auto& v) -> std::span<const double> {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ScalarField>) {
          return v.values();
        } else {
          return v.data();
        }
      },
      img);
}

// Reads exactly n bytes at `offset` or fails with a header error.
void read_header_field(std::istream& in, char* dst, std::size_t n, std::uint64_t offset,
                       const char* field) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw CatdError(CatdErrc::bad_header, offset,
                    std::string("file ends inside the ") + field + " field at byte " +
                        std::to_string(offset));
  }
}

}  // namespace

const char* to_string(CatdErrc code) noexcept {
  switch (code) {
    case CatdErrc::io_failure: return "io_failure";
    case CatdErrc::bad_magic: return "bad_magic";
    case CatdErrc::unsupported_version: return "unsupported_version";
    case CatdErrc::bad_kind: return "bad_kind";
    case CatdErrc::bad_header: return "bad_header";
    case CatdErrc::payload_size_mismatch: return "payload_size_mismatch";
    case CatdErrc::invariant_violation: return "invariant_violation";
  }
  return "unknown";
}

CatdError::CatdError(CatdErrc code, std::uint64_t offset, const std::string& what)
    : DataError(std::string("CATD ") + to_string(code) + ": " + what),
      code_(code),
      offset_(offset) {}

PayloadKind kind_of(const AnyImage& img) noexcept {
  switch (img.index()) {
    case 0: return PayloadKind::categorical;
    case 1: return PayloadKind::dirichlet;
    default: return PayloadKind::scalar;
  }
}

const Shape& shape_of(const AnyImage& img) noexcept {
  return std::visit([](const auto& v) -> const Shape& { return v.shape(); }, img);
}

std::size_t channels_of(const AnyImage& img) noexcept {
  return std::visit(
      [](const auto& v) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ScalarField>) {
          return 1;
        } else {
          return v.channels();
        }
      },
      img);
}

void write_catd(const AnyImage& img, std::ostream& out) {
  const Shape& shape = shape_of(img);
  const auto values = values_of(img);
  std::vector<char> buf;
  buf.reserve(24 + 4 * shape.rank() + 4 * values.size());
  buf.insert(buf.end(), kMagic.begin(), kMagic.end());
  put_u32(buf, kCatdVersion);
  put_u32(buf, static_cast<std::uint32_t>(kind_of(img)));
  put_u32(buf, static_cast<std::uint32_t>(shape.rank()));
  for (std::size_t e : shape.extents()) put_u32(buf, checked_u32(e, "extent"));
  put_u32(buf, checked_u32(channels_of(img), "channel count"));
  for (double v : values) put_u32(buf, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw CatdError(CatdErrc::io_failure, 0, "write failed");
}

void write_catd(const AnyImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CatdError(CatdErrc::io_failure, 0, "cannot open " + path.string());
  write_catd(img, out);
}

AnyImage read_catd(std::istream& in) {
  std::array<char, 16> head{};
  read_header_field(in, head.data(), 4, 0, "magic");
  if (!std::equal(kMagic.begin(), kMagic.end(), head.begin())) {
    throw CatdError(CatdErrc::bad_magic, 0, "bad magic at byte offset 0");
  }
  read_header_field(in, head.data() + 4, 4, 4, "version");
  if (const auto version = get_u32(head.data() + 4); version != kCatdVersion) {
    throw CatdError(CatdErrc::unsupported_version, 4,
                    "unsupported version " + std::to_string(version) + " at byte offset 4");
  }
  read_header_field(in, head.data() + 8, 4, 8, "kind");
  const auto kind = get_u32(head.data() + 8);
  if (kind > 2) {
    throw CatdError(CatdErrc::bad_kind, 8,
                    "payload kind " + std::to_string(kind) + " at byte offset 8");
  }
  read_header_field(in, head.data() + 12, 4, 12, "rank");
  const auto rank = get_u32(head.data() + 12);
  if (rank < 1 || rank > kMaxRank) {
    throw CatdError(CatdErrc::bad_header, 12,
                    "rank " + std::to_string(rank) + " at byte offset 12");
  }
  std::vector<std::size_t> extents(rank);
  std::uint64_t offset = 16;
  for (auto& e : extents) {
    char field[4];
    read_header_field(in, field, 4, offset, "extent");
    e = get_u32(field);
    if (e == 0) {
      throw CatdError(CatdErrc::bad_header, offset,
                      "zero extent at byte offset " + std::to_string(offset));
    }
    offset += 4;
  }
  char field[4];
  read_header_field(in, field, 4, offset, "channels");
  const std::size_t channels = get_u32(field);
  const std::size_t min_channels = kind == 2 ? 1 : 2;
  if (channels < min_channels || (kind == 2 && channels != 1)) {
    throw CatdError(CatdErrc::bad_header, offset,
                    "channel count " + std::to_string(channels) + " at byte offset " +
                        std::to_string(offset));
  }
  offset += 4;

  const Shape shape{std::span<const std::size_t>(extents)};
  const std::uint64_t count = static_cast<std::uint64_t>(shape.pixel_count()) * channels;
  const std::uint64_t expected = count * 4;
  std::vector<char> payload((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  if (payload.size() != expected) {
    throw CatdError(CatdErrc::payload_size_mismatch, offset,
                    "payload has " + std::to_string(payload.size()) + " bytes, expected " +
                        std::to_string(expected));
  }
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    values[k] = std::bit_cast<float>(get_u32(payload.data() + 4 * k));
  }

  switch (static_cast<PayloadKind>(kind)) {
    case PayloadKind::categorical: {
      CategoricalImage img(shape, channels, std::move(values));
      if (auto bad = validate(img)) {
        throw CatdError(CatdErrc::invariant_violation, bad->pixel,
                        "pixel " + std::to_string(bad->pixel) +
                            " is off the probability simplex (defect " +
                            std::to_string(bad->defect) + ")");
      }
      return img;
    }
    case PayloadKind::dirichlet: {
      for (std::size_t k = 0; k < count; ++k) {
        if (!(values[k] > 0.0) || !std::isfinite(values[k])) {
          throw CatdError(CatdErrc::invariant_violation, k / channels,
                          "pixel " + std::to_string(k / channels) +
                              " has a non-positive Dirichlet parameter");
        }
      }
      return DirichletImage(shape, channels, std::move(values));
    }
    case PayloadKind::scalar:
      return ScalarField(shape, std::move(values));
  }
  throw CatdError(CatdErrc::bad_kind, 8, "unreachable payload kind");
}

AnyImage read_catd(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CatdError(CatdErrc::io_failure, 0, "cannot open " + path.string());
  return read_catd(in);
}

CategoricalImage read_categorical(const std::filesystem::path& path) {
  AnyImage img = read_catd(path);
  if (auto* cat = std::get_if<CategoricalImage>(&img)) return std::move(*cat);
  throw DataError(path.string() + " does not hold a categorical image");
}

}  // namespace catmorph::io
