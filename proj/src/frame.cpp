#include "vvckit/frame.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <new>

#include "vvckit/rng.hpp"

namespace vvckit {

namespace {

std::vector<uint16_t> allocate_samples(std::ptrdiff_t stride, int height) {
  const auto max_samples = static_cast<uint64_t>(std::numeric_limits<std::ptrdiff_t>::max()) / sizeof(uint16_t);
  const uint64_t samples = static_cast<uint64_t>(stride) * static_cast<uint64_t>(height);
  if (stride != 0 && samples / static_cast<uint64_t>(stride) != static_cast<uint64_t>(height))
    throw AllocationError("plane size overflows the address space");
  if (samples > max_samples) throw AllocationError("plane size overflows the address space");
  try {
    return std::vector<uint16_t>(static_cast<std::size_t>(samples), 0);
  } catch (const std::bad_alloc&) {
    throw AllocationError("plane allocation failed");
  } catch (const std::length_error&) {
    throw AllocationError("plane size exceeds container limits");
  }
}

std::ptrdiff_t aligned_stride(int width) {
  const auto w = static_cast<std::ptrdiff_t>(width);
  return (w + Plane::kStrideAlign - 1) / Plane::kStrideAlign * Plane::kStrideAlign;
}

}  // namespace

Plane::Plane(int width, int height, std::ptrdiff_t stride, BitDepth depth, bool)
    : width_(width), height_(height), stride_(stride), depth_(depth) {
  VVCKIT_CHECK(width >= 1 && height >= 1, "plane dimensions must be >= 1");
  VVCKIT_CHECK(stride >= width, "plane stride must be >= width");
  data_ = allocate_samples(stride_, height_);
}

Plane::Plane(int width, int height, BitDepth depth) : Plane(width, height, aligned_stride(width), depth, true) {}

Plane Plane::with_stride(int width, int height, int stride, BitDepth depth) {
  return Plane(width, height, stride, depth, true);
}

uint16_t Plane::read_clamped(int x, int y) const {
  return at(std::clamp(x, 0, width_ - 1), std::clamp(y, 0, height_ - 1));
}

bool Plane::contains(const BlockRect& r) const {
  return r.w >= 1 && r.h >= 1 && r.x >= 0 && r.y >= 0 && static_cast<int64_t>(r.x) + r.w <= width_ &&
         static_cast<int64_t>(r.y) + r.h <= height_;
}

bool Plane::same_geometry(const Plane& other) const {
  return width_ == other.width_ && height_ == other.height_ && depth_ == other.depth_;
}

Plane Plane::crop(const BlockRect& r) const {
  VVCKIT_CHECK(contains(r), "crop rectangle out of bounds");
  Plane out(r.w, r.h, depth_);
  for (int y = 0; y < r.h; ++y) std::copy_n(row(r.y + y) + r.x, r.w, out.row(y));
  return out;
}

void fill_random(Plane& p, uint64_t seed) {
  SplitMix64 gen(seed);
  const auto mask = static_cast<uint64_t>(p.depth().max_sample());
  for (int y = 0; y < p.height(); ++y) {
    uint16_t* r = p.row(y);
    for (int x = 0; x < p.width(); ++x) r[x] = static_cast<uint16_t>(gen.next() & mask);
  }
}

Frame Frame::create(int width, int height, BitDepth depth) {
  const int cw = (width + 1) / 2;
  const int ch = (height + 1) / 2;
  return Frame{Plane(width, height, depth), Plane(cw, ch, depth), Plane(cw, ch, depth)};
}

std::size_t yuv420_frame_bytes(int width, int height, BitDepth depth) {
  const std::size_t bps = depth.value() > 8 ? 2 : 1;
  const std::size_t luma = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t chroma =
      static_cast<std::size_t>((width + 1) / 2) * static_cast<std::size_t>((height + 1) / 2);
  return (luma + 2 * chroma) * bps;
}

std::vector<Frame> load_yuv420(const std::filesystem::path& path, int width, int height, BitDepth depth,
                               std::size_t max_frames) {
  VVCKIT_CHECK(width >= 1 && height >= 1, "frame dimensions must be >= 1");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());

  const std::size_t frame_bytes = yuv420_frame_bytes(width, height, depth);
  if (bytes.size() % frame_bytes != 0)
    throw FormatError(path.string() + ": size " + std::to_string(bytes.size()) +
                      " is not a multiple of the frame size " + std::to_string(frame_bytes));

  std::size_t count = bytes.size() / frame_bytes;
  if (max_frames != 0) count = std::min(count, max_frames);

  const bool wide = depth.value() > 8;
  const auto mask = static_cast<uint16_t>(depth.max_sample());
  std::vector<Frame> frames;
  frames.reserve(count);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < count; ++f) {
    Frame frame = Frame::create(width, height, depth);
    for (int c = 0; c < 3; ++c) {
      Plane& p = frame.plane(c);
      for (int y = 0; y < p.height(); ++y) {
        uint16_t* r = p.row(y);
        for (int x = 0; x < p.width(); ++x) {
          if (wide) {
            const auto lo = static_cast<uint8_t>(bytes[pos]);
            const auto hi = static_cast<uint8_t>(bytes[pos + 1]);
            r[x] = static_cast<uint16_t>((lo | (hi << 8)) & mask);
            pos += 2;
          } else {
            r[x] = static_cast<uint8_t>(bytes[pos++]);
          }
        }
      }
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

void write_yuv420(const std::filesystem::path& path, std::span<const Frame> frames) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  std::vector<char> buf;
  for (const Frame& frame : frames) {
    const bool wide = frame.depth().value() > 8;
    for (int c = 0; c < 3; ++c) {
      const Plane& p = frame.plane(c);
      for (int y = 0; y < p.height(); ++y) {
        const uint16_t* r = p.row(y);
        for (int x = 0; x < p.width(); ++x) {
          buf.push_back(static_cast<char>(r[x] & 0xFF));
          if (wide) buf.push_back(static_cast<char>(r[x] >> 8));
        }
      }
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("write failure on " + path.string());
}

void hash_plane(Fnv1a64& h, const Plane& p) {
  for (int y = 0; y < p.height(); ++y) {
    const uint16_t* r = p.row(y);
    for (int x = 0; x < p.width(); ++x) h.update_sample(r[x]);
  }
}

uint64_t frame_hash(const Frame& f) {
  Fnv1a64 h;
  hash_plane(h, f.luma);
  hash_plane(h, f.cb);
  hash_plane(h, f.cr);
  return h.value();
}

}  // namespace vvckit
