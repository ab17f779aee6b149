#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace scenepilot {

// Row-major single-precision depth grid in upstream geometry units.
// Values <= 0 mark invalid pixels.
struct DepthGrid {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<float> data;  // width * height, top row first

  float at(std::uint32_t x, std::uint32_t y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  bool empty() const { return width == 0 || height == 0; }
};

// Row-major binary mask over the image domain.
struct MaskGrid {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<std::uint8_t> data;  // 0 or 1

  bool at(std::uint32_t x, std::uint32_t y) const {
    return data[static_cast<std::size_t>(y) * width + x] != 0;
  }
  bool empty() const { return width == 0 || height == 0; }
};

// Depth file: magic "SPDM", u32-LE width, u32-LE height, then
// width*height IEEE-754 f32-LE values, row-major.
DepthGrid read_depth_grid(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_depth_grid(const DepthGrid& grid);

// Mask file: magic "SPMK", u32-LE width, u32-LE height, then u32-LE run
// lengths alternating zero-runs and one-runs, starting with a zero-run
// (possibly of length 0); runs must sum to width*height.
MaskGrid read_mask_grid(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_mask_grid(const MaskGrid& grid);

DepthGrid read_depth_file(const std::string& path);
MaskGrid read_mask_file(const std::string& path);
void write_depth_file(const std::string& path, const DepthGrid& grid);
void write_mask_file(const std::string& path, const MaskGrid& grid);

}  // namespace scenepilot
