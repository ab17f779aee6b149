#include "scenepilot/grid_io.hpp"

#include "scenepilot/error.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

namespace scenepilot {

namespace {

constexpr char kDepthMagic[4] = {'S', 'P', 'D', 'M'};
constexpr char kMaskMagic[4] = {'S', 'P', 'M', 'K'};
// Caps a single grid at 2^26 cells (256 MiB of f32) so corrupt headers
// cannot trigger huge allocations.
constexpr std::uint64_t kMaxCells = 1ull << 26;

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void expect_magic(const char (&magic)[4]) {
    if (bytes_.size() < 4 || std::memcmp(bytes_.data(), magic, 4) != 0) {
      throw BenchError(Errc::bad_magic, "bad magic bytes");
    }
    pos_ = 4;
  }

  std::uint32_t u32() {
    if (pos_ + 4 > bytes_.size()) {
      throw BenchError(Errc::truncated_payload, "truncated header");
    }
    std::uint32_t v = static_cast<std::uint32_t>(bytes_[pos_]) |
                      static_cast<std::uint32_t>(bytes_[pos_ + 1]) << 8 |
                      static_cast<std::uint32_t>(bytes_[pos_ + 2]) << 16 |
                      static_cast<std::uint32_t>(bytes_[pos_ + 3]) << 24;
    pos_ += 4;
    return v;
  }

  float f32() { return std::bit_cast<float>(u32()); }

  bool at_end() const { return pos_ == bytes_.size(); }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint64_t checked_cells(std::uint32_t width, std::uint32_t height) {
  const std::uint64_t cells =
      static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
  if (cells > kMaxCells) {
    throw BenchError(Errc::dimension_overflow, "grid dimensions too large");
  }
  return cells;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

std::vector<std::uint8_t> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw BenchError(Errc::io_error, "cannot open '" + path + "'");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw BenchError(Errc::io_error, "cannot write '" + path + "'");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

DepthGrid read_depth_grid(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.expect_magic(kDepthMagic);
  DepthGrid grid;
  grid.width = r.u32();
  grid.height = r.u32();
  const std::uint64_t cells = checked_cells(grid.width, grid.height);
  if (r.remaining() < cells * 4) {
    throw BenchError(Errc::truncated_payload,
                     "depth payload shorter than declared dimensions");
  }
  grid.data.reserve(cells);
  for (std::uint64_t i = 0; i < cells; ++i) grid.data.push_back(r.f32());
  return grid;
}

std::vector<std::uint8_t> write_depth_grid(const DepthGrid& grid) {
  std::vector<std::uint8_t> out;
  out.reserve(12 + grid.data.size() * 4);
  out.insert(out.end(), kDepthMagic, kDepthMagic + 4);
  put_u32(out, grid.width);
  put_u32(out, grid.height);
  for (float v : grid.data) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

MaskGrid read_mask_grid(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.expect_magic(kMaskMagic);
  MaskGrid grid;
  grid.width = r.u32();
  grid.height = r.u32();
  const std::uint64_t cells = checked_cells(grid.width, grid.height);
  grid.data.assign(cells, 0);
  std::uint64_t filled = 0;
  std::uint8_t value = 0;  // runs start with zeros
  while (filled < cells) {
    if (r.at_end()) {
      throw BenchError(Errc::truncated_payload,
                       "mask runs end before covering the grid");
    }
    const std::uint32_t run = r.u32();
    if (filled + run > cells) {
      throw BenchError(Errc::dimension_overflow,
                       "mask runs exceed declared dimensions");
    }
    if (value != 0) {
      std::fill_n(grid.data.begin() + static_cast<std::ptrdiff_t>(filled), run,
                  std::uint8_t{1});
    }
    filled += run;
    value ^= 1;
  }
  return grid;
}

std::vector<std::uint8_t> write_mask_grid(const MaskGrid& grid) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMaskMagic, kMaskMagic + 4);
  put_u32(out, grid.width);
  put_u32(out, grid.height);
  std::uint8_t value = 0;
  std::uint64_t run = 0;
  for (std::uint8_t cell : grid.data) {
    const std::uint8_t bit = cell != 0 ? 1 : 0;
    if (bit == value) {
      ++run;
      continue;
    }
    put_u32(out, static_cast<std::uint32_t>(run));
    value = bit;
    run = 1;
  }
  if (!grid.data.empty()) put_u32(out, static_cast<std::uint32_t>(run));
  return out;
}

DepthGrid read_depth_file(const std::string& path) {
  const auto bytes = slurp(path);
  return read_depth_grid(bytes);
}

MaskGrid read_mask_file(const std::string& path) {
  const auto bytes = slurp(path);
  return read_mask_grid(bytes);
}

void write_depth_file(const std::string& path, const DepthGrid& grid) {
  dump(path, write_depth_grid(grid));
}

void write_mask_file(const std::string& path, const MaskGrid& grid) {
  dump(path, write_mask_grid(grid));
}

}  // namespace scenepilot
