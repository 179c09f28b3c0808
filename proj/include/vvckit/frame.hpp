#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vvckit/error.hpp"
#include "vvckit/rng.hpp"

namespace vvckit {

class BitDepth {
 public:
  constexpr explicit BitDepth(int value) : value_(value) {
    if (value != 8 && value != 10) throw ContractViolation("bit depth must be 8 or 10");
  }

  constexpr int value() const { return value_; }
  constexpr int max_sample() const { return (1 << value_) - 1; }
  constexpr int index() const { return value_ == 8 ? 0 : 1; }

  friend constexpr bool operator==(BitDepth, BitDepth) = default;

 private:
  int value_;
};

inline constexpr BitDepth kDepth8{8};
inline constexpr BitDepth kDepth10{10};

struct BlockRect {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  friend bool operator==(const BlockRect&, const BlockRect&) = default;
};

// Single-component sample raster. Samples live in 16-bit containers for both
// bit depths; the row pitch is padded to a multiple of 16 samples.
class Plane {
 public:
  static constexpr int kStrideAlign = 16;

  Plane() = default;
  Plane(int width, int height, BitDepth depth);

  // Explicit stride (>= width); used for tests and external buffers.
  static Plane with_stride(int width, int height, int stride, BitDepth depth);

  int width() const { return width_; }
  int height() const { return height_; }
  std::ptrdiff_t stride() const { return stride_; }
  BitDepth depth() const { return depth_; }
  bool empty() const { return data_.empty(); }

  uint16_t* row(int y) { return data_.data() + static_cast<std::ptrdiff_t>(y) * stride_; }
  const uint16_t* row(int y) const { return data_.data() + static_cast<std::ptrdiff_t>(y) * stride_; }

  uint16_t& at(int x, int y) { return row(y)[x]; }
  uint16_t at(int x, int y) const { return row(y)[x]; }

  // Edge-replicating read for arbitrary coordinates.
  uint16_t read_clamped(int x, int y) const;

  std::span<uint16_t> data() { return data_; }
  std::span<const uint16_t> data() const { return data_; }

  bool contains(const BlockRect& r) const;
  bool same_geometry(const Plane& other) const;

  // Copy of the logical samples in the given rectangle (stride-packed).
  Plane crop(const BlockRect& r) const;

 private:
  Plane(int width, int height, std::ptrdiff_t stride, BitDepth depth, bool);

  int width_ = 0;
  int height_ = 0;
  std::ptrdiff_t stride_ = 0;
  BitDepth depth_ = kDepth8;
  std::vector<uint16_t> data_;
};

inline Plane plane_new(int width, int height, BitDepth depth) { return Plane(width, height, depth); }

inline uint16_t read_clamped(const Plane& p, int x, int y) { return p.read_clamped(x, y); }

// Deterministic splitmix64 fill, one generator output per sample in raster
// order, masked to the plane's bit depth.
void fill_random(Plane& p, uint64_t seed);

struct Frame {
  Plane luma;
  Plane cb;
  Plane cr;

  // 4:2:0 layout; chroma dimensions are ceil(luma / 2).
  static Frame create(int width, int height, BitDepth depth);

  int width() const { return luma.width(); }
  int height() const { return luma.height(); }
  BitDepth depth() const { return luma.depth(); }

  Plane& plane(int c) { return c == 0 ? luma : (c == 1 ? cb : cr); }
  const Plane& plane(int c) const { return c == 0 ? luma : (c == 1 ? cb : cr); }
};

// Bytes per 4:2:0 frame in a raw file.
std::size_t yuv420_frame_bytes(int width, int height, BitDepth depth);

// Raw planar 4:2:0; 10-bit samples are 2-byte little-endian with the top six
// bits masked off on read. max_frames == 0 reads everything.
std::vector<Frame> load_yuv420(const std::filesystem::path& path, int width, int height, BitDepth depth,
                               std::size_t max_frames = 0);

void write_yuv420(const std::filesystem::path& path, std::span<const Frame> frames);

// FNV-1a over logical samples (2 LE bytes each), luma then cb then cr.
uint64_t frame_hash(const Frame& f);

// Streams a plane's logical samples into an FNV-1a state.
void hash_plane(Fnv1a64& h, const Plane& p);

}  // namespace vvckit
