#include "image.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>

#include <zlib.h>

#include "wflow/errors.hpp"

namespace wflow::detail {

Image::Image(int width, int height, Color fill) : width_(width), height_(height) {
  rgb_.resize(size_t(width_) * size_t(height_) * 3);
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x) set(x, y, fill);
}

void Image::set(int x, int y, Color c) {
  if (x < 0 || x >= width_ || y < 0 || y >= height_) return;
  const size_t at = (size_t(y) * size_t(width_) + size_t(x)) * 3;
  rgb_[at] = c[0];
  rgb_[at + 1] = c[1];
  rgb_[at + 2] = c[2];
}

Color Image::get(int x, int y) const {
  const size_t at = (size_t(y) * size_t(width_) + size_t(x)) * 3;
  return {rgb_[at], rgb_[at + 1], rgb_[at + 2]};
}

void Image::fill_rect(int x0, int y0, int x1, int y1, Color c) {
  for (int y = std::min(y0, y1); y <= std::max(y0, y1); ++y)
    for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x) set(x, y, c);
}

void Image::line(double x0, double y0, double x1, double y1, Color c) {
  const double dx = x1 - x0, dy = y1 - y0;
  const int steps = std::max(1, int(std::ceil(std::max(std::abs(dx), std::abs(dy)))));
  for (int s = 0; s <= steps; ++s) {
    const double t = double(s) / steps;
    set(int(std::lround(x0 + t * dx)), int(std::lround(y0 + t * dy)), c);
  }
}

void Image::arrow(double x0, double y0, double x1, double y1, Color c) {
  line(x0, y0, x1, y1, c);
  const double dx = x1 - x0, dy = y1 - y0;
  const double len = std::hypot(dx, dy);
  if (len < 1.0) return;
  const double head = std::min(5.0, 1.5 + 0.25 * len);
  const double ux = dx / len, uy = dy / len;
  // Two barbs at ~30 degrees off the shaft.
  const double ca = std::cos(M_PI / 6.0), sa = std::sin(M_PI / 6.0);
  line(x1, y1, x1 - head * (ux * ca - uy * sa), y1 - head * (uy * ca + ux * sa), c);
  line(x1, y1, x1 - head * (ux * ca + uy * sa), y1 - head * (uy * ca - ux * sa), c);
}

namespace {

const std::map<char, std::array<std::uint8_t, 7>>& font() {
  static const std::map<char, std::array<std::uint8_t, 7>> glyphs = {
      {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
      {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
      {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
      {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
      {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
      {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
      {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
      {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
      {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
      {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
      {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
      {'.', {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C}},
      {'=', {0x00, 0x00, 0x1F, 0x00, 0x1F, 0x00, 0x00}},
      {'/', {0x01, 0x01, 0x02, 0x04, 0x08, 0x10, 0x10}},
      {'x', {0x00, 0x00, 0x11, 0x0A, 0x04, 0x0A, 0x11}},
      {'p', {0x00, 0x00, 0x1E, 0x11, 0x1E, 0x10, 0x10}},
      {'t', {0x08, 0x08, 0x1C, 0x08, 0x08, 0x09, 0x06}},
      {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
      {'a', {0x00, 0x00, 0x0E, 0x01, 0x0F, 0x11, 0x0F}},
      {'d', {0x01, 0x01, 0x0D, 0x13, 0x11, 0x13, 0x0D}},
      {'f', {0x06, 0x09, 0x08, 0x1C, 0x08, 0x08, 0x08}},
      {'i', {0x04, 0x00, 0x0C, 0x04, 0x04, 0x04, 0x0E}},
      {'l', {0x0C, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
      {'m', {0x00, 0x00, 0x1A, 0x15, 0x15, 0x15, 0x15}},
      {'o', {0x00, 0x00, 0x0E, 0x11, 0x11, 0x11, 0x0E}},
      {'s', {0x00, 0x00, 0x0F, 0x10, 0x0E, 0x01, 0x1E}},
      {'y', {0x00, 0x00, 0x11, 0x11, 0x0F, 0x01, 0x0E}},
      {'u', {0x00, 0x00, 0x11, 0x11, 0x11, 0x13, 0x0D}},
      {'W', {0x11, 0x11, 0x15, 0x15, 0x15, 0x1B, 0x11}},
      {' ', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},
  };
  return glyphs;
}

}  // namespace

void Image::text(int x, int y, const std::string& s, Color c, int scale) {
  int cx = x;
  for (char ch : s) {
    auto it = font().find(ch);
    if (it == font().end()) it = font().find(' ');
    for (int row = 0; row < 7; ++row) {
      for (int col = 0; col < 5; ++col) {
        if (it->second[size_t(row)] & (1 << (4 - col)))
          fill_rect(cx + col * scale, y + row * scale, cx + col * scale + scale - 1,
                    y + row * scale + scale - 1, c);
      }
    }
    cx += 6 * scale;
  }
}

int Image::text_width(const std::string& s, int scale) { return int(s.size()) * 6 * scale; }

namespace {

void put_u32_be(std::vector<std::uint8_t>& v, std::uint32_t x) {
  v.push_back(std::uint8_t(x >> 24));
  v.push_back(std::uint8_t(x >> 16));
  v.push_back(std::uint8_t(x >> 8));
  v.push_back(std::uint8_t(x));
}

void write_chunk(std::ofstream& out, const char type[4], const std::vector<std::uint8_t>& data) {
  std::vector<std::uint8_t> head;
  put_u32_be(head, std::uint32_t(data.size()));
  out.write(reinterpret_cast<const char*>(head.data()), 4);
  out.write(type, 4);
  if (!data.empty()) out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(type), 4);
  if (!data.empty()) crc = crc32(crc, data.data(), uInt(data.size()));
  std::vector<std::uint8_t> tail;
  put_u32_be(tail, std::uint32_t(crc));
  out.write(reinterpret_cast<const char*>(tail.data()), 4);
}

}  // namespace

void write_png(const Image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");

  const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  out.write(reinterpret_cast<const char*>(sig), 8);

  std::vector<std::uint8_t> ihdr;
  put_u32_be(ihdr, std::uint32_t(img.width()));
  put_u32_be(ihdr, std::uint32_t(img.height()));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(2);   // RGB
  ihdr.push_back(0);   // compression
  ihdr.push_back(0);   // filter
  ihdr.push_back(0);   // no interlace
  write_chunk(out, "IHDR", ihdr);

  // Scanlines with filter byte 0, zlib-compressed.
  const size_t stride = size_t(img.width()) * 3;
  std::vector<std::uint8_t> raw((stride + 1) * size_t(img.height()));
  for (int y = 0; y < img.height(); ++y) {
    raw[size_t(y) * (stride + 1)] = 0;
    std::memcpy(&raw[size_t(y) * (stride + 1) + 1], img.pixels().data() + size_t(y) * stride,
                stride);
  }
  uLongf bound = compressBound(uLong(raw.size()));
  std::vector<std::uint8_t> compressed(bound);
  if (compress2(compressed.data(), &bound, raw.data(), uLong(raw.size()), 6) != Z_OK)
    throw IoError("png: zlib compression failed");
  compressed.resize(bound);
  write_chunk(out, "IDAT", compressed);
  write_chunk(out, "IEND", {});
  if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace wflow::detail
