#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace wflow::detail {

using Color = std::array<std::uint8_t, 3>;

/// Minimal RGB8 canvas with the drawing primitives the figure renderer needs.
class Image {
 public:
  Image(int width, int height, Color fill = {255, 255, 255});

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<std::uint8_t>& pixels() const { return rgb_; }

  void set(int x, int y, Color c);
  Color get(int x, int y) const;
  void fill_rect(int x0, int y0, int x1, int y1, Color c);
  void line(double x0, double y0, double x1, double y1, Color c);
  void arrow(double x0, double y0, double x1, double y1, Color c);
  /// 5x7 bitmap text; supports digits, '-', '.', '=', '/', and a few letters.
  void text(int x, int y, const std::string& s, Color c, int scale = 1);
  static int text_width(const std::string& s, int scale = 1);

 private:
  int width_, height_;
  std::vector<std::uint8_t> rgb_;
};

/// Writes the canvas as an 8-bit RGB PNG. Throws IoError on failure.
void write_png(const Image& img, const std::string& path);

}  // namespace wflow::detail
