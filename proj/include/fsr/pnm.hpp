#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fsr/imaging.hpp"

// Netpbm I/O: 8-bit binary graymaps (P5) for images and bitmaps (P1/P4)
// for sampling masks.
//
// In mask files a 1 bit marks an AVAILABLE sample. This is the opposite of
// the usual "1 = black ink" reading of PBM.
namespace fsr::pnm {

namespace detail {

inline int skip_space_and_comments(std::istream& in) {
  int c = in.peek();
  while (c != EOF) {
    if (c == '#') {
      in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    } else if (std::isspace(c)) {
      in.get();
    } else {
      break;
    }
    c = in.peek();
  }
  return c;
}

inline std::size_t read_header_number(std::istream& in, const char* field) {
  const int c = skip_space_and_comments(in);
  if (c == EOF || !std::isdigit(c)) {
    throw DataError(std::string("malformed header: expected ") + field);
  }
  std::size_t value = 0;
  while (std::isdigit(in.peek())) {
    value = value * 10 + static_cast<std::size_t>(in.get() - '0');
    if (value > (std::size_t{1} << 31)) throw DataError(std::string("malformed header: ") + field + " too large");
  }
  return value;
}

inline std::string read_magic(std::istream& in) {
  char magic[2] = {0, 0};
  if (!in.read(magic, 2)) throw DataError("malformed header: missing magic number");
  return std::string(magic, 2);
}

// Exactly one whitespace byte separates the header from a binary raster.
inline void consume_raster_separator(std::istream& in) {
  const int c = in.get();
  if (c == EOF || !std::isspace(c)) throw DataError("malformed header: missing separator before raster");
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace detail

/// Round half away from zero, clamp to [0, 255].
inline std::uint8_t quantize(double v) {
  const double r = std::round(v);
  return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

inline GrayImage read_pgm(std::istream& in) {
  const std::string magic = detail::read_magic(in);
  if (magic != "P5") throw DataError("not a binary PGM (P5) file: magic '" + magic + "'");
  const std::size_t width = detail::read_header_number(in, "width");
  const std::size_t height = detail::read_header_number(in, "height");
  const std::size_t maxval = detail::read_header_number(in, "maxval");
  if (width == 0 || height == 0) throw DataError("malformed header: zero image dimension");
  if (maxval != 255) throw DataError("unsupported maxval " + std::to_string(maxval) + " (only 255)");
  detail::consume_raster_separator(in);
  std::vector<unsigned char> raw(width * height);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw DataError("truncated PGM payload: expected " + std::to_string(raw.size()) + " bytes, got " +
                    std::to_string(in.gcount()));
  }
  return GrayImage(width, height, std::vector<double>(raw.begin(), raw.end()));
}

inline void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  std::vector<char> raw(image.size());
  std::transform(image.begin(), image.end(), raw.begin(),
                 [](double v) { return static_cast<char>(quantize(v)); });
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
  if (!out) throw DataError("failed writing PGM data");
}

inline SampleMask read_pbm(std::istream& in) {
  const std::string magic = detail::read_magic(in);
  if (magic != "P1" && magic != "P4") throw DataError("not a PBM (P1/P4) file: magic '" + magic + "'");
  const std::size_t width = detail::read_header_number(in, "width");
  const std::size_t height = detail::read_header_number(in, "height");
  if (width == 0 || height == 0) throw DataError("malformed header: zero image dimension");
  SampleMask mask(width, height, false);
  if (magic == "P1") {
    for (std::size_t i = 0; i < mask.size(); ++i) {
      const int c = detail::skip_space_and_comments(in);
      if (c == EOF) throw DataError("truncated PBM payload at pixel " + std::to_string(i));
      if (c != '0' && c != '1') throw DataError("malformed PBM payload: unexpected character");
      in.get();
      mask[i] = c == '1' ? 1 : 0;
    }
    return mask;
  }
  detail::consume_raster_separator(in);
  const std::size_t stride = (width + 7) / 8;
  std::vector<unsigned char> row(stride);
  for (std::size_t y = 0; y < height; ++y) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(stride));
    if (static_cast<std::size_t>(in.gcount()) != stride) {
      throw DataError("truncated PBM payload at row " + std::to_string(y));
    }
    for (std::size_t x = 0; x < width; ++x) mask.set(y, x, (row[x / 8] >> (7 - x % 8)) & 1u);
  }
  return mask;
}

enum class PbmEncoding { ascii, binary };

inline void write_pbm(std::ostream& out, const SampleMask& mask, PbmEncoding encoding = PbmEncoding::binary) {
  if (encoding == PbmEncoding::ascii) {
    out << "P1\n" << mask.width() << ' ' << mask.height() << '\n';
    for (std::size_t y = 0; y < mask.height(); ++y) {
      for (std::size_t x = 0; x < mask.width(); ++x) {
        // Plain PBM lines should stay under 70 characters.
        if (x > 0) out << ((x % 35) == 0 ? '\n' : ' ');
        out << (mask(y, x) ? '1' : '0');
      }
      out << '\n';
    }
  } else {
    out << "P4\n" << mask.width() << ' ' << mask.height() << '\n';
    const std::size_t stride = (mask.width() + 7) / 8;
    std::vector<unsigned char> row(stride);
    for (std::size_t y = 0; y < mask.height(); ++y) {
      std::fill(row.begin(), row.end(), 0);
      for (std::size_t x = 0; x < mask.width(); ++x) {
        if (mask(y, x)) row[x / 8] |= static_cast<unsigned char>(0x80u >> (x % 8));
      }
      out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(stride));
    }
  }
  if (!out) throw DataError("failed writing PBM data");
}

inline GrayImage read_pgm(const std::string& path) {
  auto in = detail::open_in(path);
  return read_pgm(in);
}

inline void write_pgm(const std::string& path, const GrayImage& image) {
  auto out = detail::open_out(path);
  write_pgm(out, image);
}

inline SampleMask read_pbm(const std::string& path) {
  auto in = detail::open_in(path);
  return read_pbm(in);
}

inline void write_pbm(const std::string& path, const SampleMask& mask,
                      PbmEncoding encoding = PbmEncoding::binary) {
  auto out = detail::open_out(path);
  write_pbm(out, mask, encoding);
}

}  // namespace fsr::pnm
