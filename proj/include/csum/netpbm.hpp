/*
 * Copyright 2026 The csum Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CSUM_NETPBM_HPP
#define CSUM_NETPBM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "csum/errors.hpp"
#include "csum/kernels.hpp"
#include "csum/matrix.hpp"

namespace csum {

/// Grayscale plane; samples(i, j) is row i, column j, every sample in [0, maxval].
struct ImagePlane {
  Matrix<Exact> samples;
  std::uint32_t maxval = 255;

  [[nodiscard]] std::size_t width() const noexcept { return samples.cols(); }
  [[nodiscard]] std::size_t height() const noexcept { return samples.rows(); }

  void validate() const {
    if (maxval < 1 || maxval > 65535) throw DomainError("maxval must be in 1..65535, got " + std::to_string(maxval));
    for (const Exact& v : samples.data()) {
      if (v < Exact{0} || v > Exact{maxval}) {
        throw DomainError("sample " + v.to_string() + " outside [0, " + std::to_string(maxval) + "]");
      }
    }
  }

  friend bool operator==(const ImagePlane&, const ImagePlane&) = default;
};

struct ColorImage {
  ImagePlane red;
  ImagePlane green;
  ImagePlane blue;

  void validate() const {
    for (const ImagePlane* p : {&red, &green, &blue}) {
      p->validate();
      if (p->width() != red.width() || p->height() != red.height() || p->maxval != red.maxval) {
        throw DimensionError("color planes disagree on dimensions or maxval");
      }
    }
  }

  friend bool operator==(const ColorImage&, const ColorImage&) = default;
};

using Image = std::variant<ImagePlane, ColorImage>;

enum class NetpbmEncoding { Ascii, Binary };

class ParseError : public Error {
 public:
  enum class Kind { BadMagic, Unsupported, BadHeader, BadSample, Truncated, SampleOutOfRange };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error("netpbm parse error at byte " + std::to_string(offset) + ": " + what), kind_(kind), offset_(offset) {}

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

namespace detail {

class NetpbmReader {
 public:
  explicit NetpbmReader(std::string_view bytes) : bytes_(bytes) {}

  Image read() {
    if (bytes_.size() < 2 || bytes_[0] != 'P') {
      throw ParseError(ParseError::Kind::BadMagic, 0, "missing netpbm magic number");
    }
    const char kind = bytes_[1];
    pos_ = 2;
    switch (kind) {
      case '2': case '3': case '5': case '6': break;
      case '1': case '4': case '7':
        throw ParseError(ParseError::Kind::Unsupported, 0, std::string("unsupported netpbm format P") + kind);
      default:
        throw ParseError(ParseError::Kind::BadMagic, 0, std::string("unknown magic P") + kind);
    }
    if (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw ParseError(ParseError::Kind::BadMagic, pos_, "magic number must be followed by whitespace");
    }
    const std::size_t width = header_value("width", 1, 1u << 30);
    const std::size_t height = header_value("height", 1, 1u << 30);
    const auto maxval = static_cast<std::uint32_t>(header_value("maxval", 1, 65535));

    const bool color = kind == '3' || kind == '6';
    const bool binary = kind == '5' || kind == '6';
    if (binary) {
      // Exactly one whitespace byte separates maxval from the raster.
      if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
        throw ParseError(ParseError::Kind::Truncated, pos_, "expected whitespace before binary raster");
      }
      ++pos_;
    }
    const std::size_t channels = color ? 3 : 1;
    std::array<Matrix<Exact>, 3> planes = {Matrix<Exact>(height, width), Matrix<Exact>(height, width),
                                           Matrix<Exact>(height, width)};
    for (std::size_t i = 1; i <= height; ++i)
      for (std::size_t j = 1; j <= width; ++j)
        for (std::size_t c = 0; c < channels; ++c) planes[c](i, j) = binary ? binary_sample(maxval) : ascii_sample(maxval);

    if (!color) return ImagePlane{std::move(planes[0]), maxval};
    return ColorImage{{std::move(planes[0]), maxval}, {std::move(planes[1]), maxval}, {std::move(planes[2]), maxval}};
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  /// Reads a decimal token; returns false at end of input.
  bool decimal(std::uint64_t& value, std::size_t& start, ParseError::Kind bad_kind, const char* what) {
    skip_space_and_comments();
    start = pos_;
    if (pos_ >= bytes_.size()) return false;
    if (!is_digit(bytes_[pos_])) throw ParseError(bad_kind, pos_, std::string("expected decimal ") + what);
    value = 0;
    while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
      value = value * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
      if (value > (1ull << 40)) throw ParseError(bad_kind, start, std::string(what) + " is too large");
      ++pos_;
    }
    if (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw ParseError(bad_kind, pos_, std::string("unexpected character after ") + what);
    }
    return true;
  }

  std::size_t header_value(const char* what, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t v = 0;
    std::size_t start = 0;
    if (!decimal(v, start, ParseError::Kind::BadHeader, what)) {
      throw ParseError(ParseError::Kind::Truncated, start, std::string("header ends before ") + what);
    }
    if (v < lo || v > hi) {
      throw ParseError(ParseError::Kind::BadHeader, start,
                       std::string(what) + " " + std::to_string(v) + " outside " + std::to_string(lo) + ".." +
                           std::to_string(hi));
    }
    return static_cast<std::size_t>(v);
  }

  Exact ascii_sample(std::uint32_t maxval) {
    std::uint64_t v = 0;
    std::size_t start = 0;
    if (!decimal(v, start, ParseError::Kind::BadSample, "sample")) {
      throw ParseError(ParseError::Kind::Truncated, start, "raster ends early");
    }
    if (v > maxval) {
      throw ParseError(ParseError::Kind::SampleOutOfRange, start,
                       "sample " + std::to_string(v) + " exceeds maxval " + std::to_string(maxval));
    }
    return Exact(v);
  }

  Exact binary_sample(std::uint32_t maxval) {
    const std::size_t width = maxval < 256 ? 1 : 2;
    if (pos_ + width > bytes_.size()) throw ParseError(ParseError::Kind::Truncated, pos_, "raster ends early");
    const std::size_t start = pos_;
    std::uint32_t v = static_cast<unsigned char>(bytes_[pos_++]);
    if (width == 2) v = (v << 8) | static_cast<unsigned char>(bytes_[pos_++]);
    if (v > maxval) {
      throw ParseError(ParseError::Kind::SampleOutOfRange, start,
                       "sample " + std::to_string(v) + " exceeds maxval " + std::to_string(maxval));
    }
    return Exact(v);
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

inline void put_binary(std::string& out, std::uint32_t v, std::uint32_t maxval) {
  if (maxval >= 256) out.push_back(static_cast<char>((v >> 8) & 0xFF));  // big-endian
  out.push_back(static_cast<char>(v & 0xFF));
}

inline std::string encode(std::span<const ImagePlane* const> planes, NetpbmEncoding enc) {
  const ImagePlane& first = *planes.front();
  const bool color = planes.size() == 3;
  const char magic = enc == NetpbmEncoding::Ascii ? (color ? '3' : '2') : (color ? '6' : '5');
  std::string out = std::string("P") + magic + "\n" + std::to_string(first.width()) + " " +
                    std::to_string(first.height()) + "\n" + std::to_string(first.maxval) + "\n";
  for (std::size_t i = 1; i <= first.height(); ++i) {
    for (std::size_t j = 1; j <= first.width(); ++j) {
      for (std::size_t c = 0; c < planes.size(); ++c) {
        const auto v = planes[c]->samples(i, j).to<std::uint32_t>();
        if (enc == NetpbmEncoding::Binary) {
          put_binary(out, v, first.maxval);
        } else {
          if (j > 1 || c > 0) out.push_back(' ');
          out += std::to_string(v);
        }
      }
    }
    if (enc == NetpbmEncoding::Ascii) out.push_back('\n');
  }
  return out;
}

}  // namespace detail

/// Parses P2/P3 (ASCII) and P5/P6 (binary, 1- or 2-byte big-endian samples).
inline Image read_netpbm(std::string_view bytes) { return detail::NetpbmReader(bytes).read(); }

inline std::string write_netpbm(const Image& img, NetpbmEncoding enc) {
  if (const auto* gray = std::get_if<ImagePlane>(&img)) {
    gray->validate();
    const std::array<const ImagePlane*, 1> planes = {gray};
    return detail::encode(planes, enc);
  }
  const auto& color = std::get<ColorImage>(img);
  color.validate();
  const std::array<const ImagePlane*, 3> planes = {&color.red, &color.green, &color.blue};
  return detail::encode(planes, enc);
}

inline std::array<Matrix<Exact>, 3> split_color(const ColorImage& img) {
  return {img.red.samples, img.green.samples, img.blue.samples};
}

/// Rounds half away from zero, then clamps to [0, maxval].
inline Exact quantize_sample(double v, std::uint32_t maxval) {
  const double r = std::round(v);
  if (!(r > 0)) return Exact{0};
  if (r >= static_cast<double>(maxval)) return Exact{maxval};
  return Exact(static_cast<std::int64_t>(r));
}

inline Exact quantize_sample(Exact v, std::uint32_t maxval) { return std::clamp(v, Exact{0}, Exact{maxval}); }

template <Scalar S>
ImagePlane quantize_plane(const Matrix<S>& m, std::uint32_t maxval) {
  ImagePlane p{Matrix<Exact>(m.rows(), m.cols()), maxval};
  auto src = m.data();
  auto dst = p.samples.data();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = quantize_sample(src[k], maxval);
  return p;
}

/// Exact numerator/divisor rounded half away from zero in integer arithmetic, then clamped.
inline ImagePlane quantize_plane(const Scaled<Exact>& s, std::uint32_t maxval) {
  ImagePlane p{Matrix<Exact>(s.numerator.rows(), s.numerator.cols()), maxval};
  auto src = s.numerator.data();
  auto dst = p.samples.data();
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] = quantize_sample(round_div(src[k], s.divisor), maxval);
  return p;
}

inline ImagePlane quantize_plane(const Scaled<double>& s, std::uint32_t maxval) {
  return quantize_plane(s.value(), maxval);
}

/// Combines three planes; out-of-range values are rounded and clamped.
template <Scalar S>
ColorImage merge_color(const std::array<Matrix<S>, 3>& planes, std::uint32_t maxval) {
  for (const auto& p : planes) {
    if (p.rows() != planes[0].rows() || p.cols() != planes[0].cols()) {
      throw DimensionError("merge_color: planes differ in size");
    }
  }
  return {quantize_plane(planes[0], maxval), quantize_plane(planes[1], maxval), quantize_plane(planes[2], maxval)};
}

}  // namespace csum

#endif  // CSUM_NETPBM_HPP
