#include "ttv/io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

namespace fs = std::filesystem;

namespace ttv {

namespace {

constexpr char kMagic[4] = {'T', 'N', 'S', '1'};

void append_u64_le(std::vector<unsigned char>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

std::uint64_t read_u64_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  return bytes;
}

struct PngRead {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngRead() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

struct PngWrite {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;
  ~PngWrite() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

// Decoded 8-bit image, gray (1 channel) or RGB (3 channels), row-major.
struct RawImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;
  std::vector<unsigned char> pixels;
};

RawImage decode_png(const std::string& path) {
  RawImage img;
  std::vector<png_bytep> rows;

  PngRead st;
  st.fp = std::fopen(path.c_str(), "rb");
  if (!st.fp) throw IoError("cannot open " + path);
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, st.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw IoError(path + ": not a PNG file");
  }
  st.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!st.png) throw IoError("libpng init failed");
  st.info = png_create_info_struct(st.png);
  if (!st.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(st.png))) {
    throw IoError(path + ": PNG decode failed");
  }
  png_init_io(st.png, st.fp);
  png_set_sig_bytes(st.png, 8);
  png_read_info(st.png, st.info);

  const int bit_depth = png_get_bit_depth(st.png, st.info);
  const int color_type = png_get_color_type(st.png, st.info);
  if (bit_depth > 8) throw IoError(path + ": unsupported bit depth");
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(st.png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(st.png);
  }
  if (png_get_valid(st.png, st.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(st.png);
  png_set_strip_alpha(st.png);
  png_set_interlace_handling(st.png);
  png_read_update_info(st.png, st.info);

  img.height = png_get_image_height(st.png, st.info);
  img.width = png_get_image_width(st.png, st.info);
  img.channels = png_get_channels(st.png, st.info);
  if (img.channels != 1 && img.channels != 3) {
    throw IoError(path + ": unsupported channel layout");
  }
  const std::size_t rowbytes = png_get_rowbytes(st.png, st.info);
  img.pixels.resize(img.height * rowbytes);
  rows.resize(img.height);
  for (std::size_t y = 0; y < img.height; ++y) rows[y] = img.pixels.data() + y * rowbytes;
  png_read_image(st.png, rows.data());
  png_read_end(st.png, nullptr);
  return img;
}

void encode_png(const RawImage& img, const std::string& path) {
  std::vector<png_bytep> rows(img.height);
  const std::size_t rowbytes = img.width * img.channels;
  for (std::size_t y = 0; y < img.height; ++y) {
    rows[y] = const_cast<png_bytep>(img.pixels.data() + y * rowbytes);
  }

  PngWrite st;
  st.fp = std::fopen(path.c_str(), "wb");
  if (!st.fp) throw IoError("cannot open " + path + " for writing");
  st.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!st.png) throw IoError("libpng init failed");
  st.info = png_create_info_struct(st.png);
  if (!st.info) throw IoError("libpng init failed");
  if (setjmp(png_jmpbuf(st.png))) {
    throw IoError(path + ": PNG encode failed");
  }
  png_init_io(st.png, st.fp);
  png_set_IHDR(st.png, st.info, static_cast<png_uint_32>(img.width),
               static_cast<png_uint_32>(img.height), 8,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(st.png, st.info);
  png_write_image(st.png, rows.data());
  png_write_end(st.png, nullptr);
}

unsigned char quantize(double v) {
  v = std::clamp(v, 0.0, 1.0);
  return static_cast<unsigned char>(std::floor(v * 255.0 + 0.5));
}

Tensor image_to_tensor(const RawImage& img) {
  Tensor t({img.height, img.width, img.channels});
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<double>(img.pixels[i]) / 255.0;
  }
  return t;
}

// Accepts (h, w), (h, w, 1) or (h, w, 3).
RawImage tensor_to_image(const Tensor& t) {
  RawImage img;
  if (t.order() == 2) {
    img.channels = 1;
  } else if (t.order() == 3 && (t.dims()[2] == 1 || t.dims()[2] == 3)) {
    img.channels = t.dims()[2];
  } else {
    throw ShapeError("save_png: tensor is not an image (need h x w x {1|3})");
  }
  img.height = t.dims()[0];
  img.width = t.dims()[1];
  img.pixels.resize(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) img.pixels[i] = quantize(t[i]);
  return img;
}

bool has_ext(const std::string& path, const std::string& ext) {
  if (path.size() < ext.size()) return false;
  const std::string tail = path.substr(path.size() - ext.size());
  return std::equal(tail.begin(), tail.end(), ext.begin(),
                    [](char a, char b) { return std::tolower(a) == b; });
}

std::vector<fs::path> list_frames(const std::string& dir) {
  std::vector<fs::path> frames;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && has_ext(entry.path().filename().string(), ".png")) {
      frames.push_back(entry.path());
    }
  }
  std::sort(frames.begin(), frames.end());
  if (frames.empty()) throw IoError(dir + ": no PNG frames found");
  return frames;
}

std::string frame_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06zu.png", index);
  return buf;
}

void check_mapping(const Tensor& t, MediaKind kind, const std::string& path) {
  const Dims& d = t.dims();
  switch (kind) {
    case MediaKind::ColorImage:
      if (d.size() == 3 && d[2] == 3) return;
      break;
    case MediaKind::GrayVideo:
      if (d.size() == 3) return;
      break;
    case MediaKind::ColorVideo:
      if (d.size() == 4 && d[2] == 3) return;
      break;
  }
  throw ShapeError(path + ": tensor extents do not match the declared mapping");
}

}  // namespace

Tensor load_tns(const std::string& path) {
  const std::vector<unsigned char> bytes = read_file(path);
  if (bytes.size() < 5 || !std::equal(kMagic, kMagic + 4, bytes.begin())) {
    throw IoError(path + ": not a TNS1 container");
  }
  const std::size_t order = bytes[4];
  if (order < 1) throw IoError(path + ": tensor order must be >= 1");
  std::size_t pos = 5;
  if (bytes.size() < pos + 8 * order) throw IoError(path + ": truncated header");
  // the value count can never exceed what the payload holds; checking while
  // multiplying also rules out extent-product overflow
  const std::size_t available = (bytes.size() - pos - 8 * order) / 8;
  Dims dims(order);
  std::size_t count = 1;
  for (std::size_t m = 0; m < order; ++m, pos += 8) {
    const std::uint64_t e = read_u64_le(bytes.data() + pos);
    if (e < 1) throw IoError(path + ": extents must be >= 1");
    dims[m] = static_cast<std::size_t>(e);
    if (available == 0 || count > available / dims[m]) {
      throw IoError(path + ": payload size mismatch");
    }
    count *= dims[m];
  }
  if (bytes.size() != pos + 8 * count) throw IoError(path + ": payload size mismatch");
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i, pos += 8) {
    values[i] = std::bit_cast<double>(read_u64_le(bytes.data() + pos));
  }
  Tensor t(std::move(dims), std::move(values));
  if (!t.all_finite()) throw IoError(path + ": non-finite values");
  return t;
}

void save_tns(const Tensor& t, const std::string& path) {
  if (t.order() < 1 || t.order() > 255) throw IoError("save_tns: unsupported tensor order");
  for (auto d : t.dims()) {
    if (d < 1) throw IoError("save_tns: extents must be >= 1");
  }
  std::vector<unsigned char> bytes;
  bytes.reserve(5 + 8 * t.order() + 8 * t.size());
  bytes.insert(bytes.end(), kMagic, kMagic + 4);
  bytes.push_back(static_cast<unsigned char>(t.order()));
  for (auto d : t.dims()) append_u64_le(bytes, d);
  for (std::size_t i = 0; i < t.size(); ++i) {
    append_u64_le(bytes, std::bit_cast<std::uint64_t>(t[i]));
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os.write(reinterpret_cast<const char*>(bytes.data()),
           static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("write failed: " + path);
}

Tensor load_png(const std::string& path) { return image_to_tensor(decode_png(path)); }

void save_png(const Tensor& t, const std::string& path) { encode_png(tensor_to_image(t), path); }

Tensor load_frame_dir(const std::string& path) {
  const auto frames = list_frames(path);
  const std::size_t count = frames.size();
  RawImage first = decode_png(frames[0].string());
  const std::size_t h = first.height, w = first.width, c = first.channels;

  Dims dims = c == 1 ? Dims{h, w, count} : Dims{h, w, c, count};
  Tensor t(dims);
  for (std::size_t f = 0; f < count; ++f) {
    RawImage img = f == 0 ? std::move(first) : decode_png(frames[f].string());
    if (img.height != h || img.width != w || img.channels != c) {
      throw IoError(frames[f].string() + ": inconsistent frame size");
    }
    // frame plane (h, w, c) scattered along the last mode
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      t[i * count + f] = static_cast<double>(img.pixels[i]) / 255.0;
    }
  }
  return t;
}

void save_frame_dir(const Tensor& t, const std::string& path) {
  std::size_t channels;
  if (t.order() == 3) {
    channels = 1;
  } else if (t.order() == 4 && t.dims()[2] == 3) {
    channels = 3;
  } else {
    throw ShapeError("save_frame_dir: need (h, w, frames) or (h, w, 3, frames)");
  }
  const std::size_t count = t.dims().back();
  fs::create_directories(path);
  RawImage img;
  img.height = t.dims()[0];
  img.width = t.dims()[1];
  img.channels = channels;
  img.pixels.resize(t.size() / count);
  for (std::size_t f = 0; f < count; ++f) {
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      img.pixels[i] = quantize(t[i * count + f]);
    }
    encode_png(img, (fs::path(path) / frame_name(f)).string());
  }
}

Tensor load_media(const std::string& path, std::optional<MediaKind> kind) {
  Tensor t;
  if (fs::is_directory(path)) {
    t = load_frame_dir(path);
  } else if (has_ext(path, ".tns")) {
    t = load_tns(path);
  } else {
    t = load_png(path);
    if (kind && *kind == MediaKind::ColorImage && t.dims()[2] != 3) {
      throw ShapeError(path + ": expected a color image, got grayscale");
    }
  }
  if (kind) check_mapping(t, *kind, path);
  return t;
}

void save_media(const Tensor& t, const std::string& path, std::optional<MediaKind> kind) {
  if (has_ext(path, ".tns")) {
    save_tns(t, path);
    return;
  }
  if (kind) check_mapping(t, *kind, path);
  if (has_ext(path, ".png")) {
    if (kind && *kind != MediaKind::ColorImage && !(t.order() == 3 && t.dims()[2] == 1)) {
      throw ShapeError(path + ": video tensors need a frame directory output");
    }
    save_png(t, path);
    return;
  }
  // anything else is a frame directory
  if (kind == MediaKind::ColorImage) {
    throw ShapeError(path + ": image mapping needs a .png or .tns output");
  }
  save_frame_dir(t, path);
}

}  // namespace ttv
