#pragma once

#include <optional>
#include <string>

#include "ttv/tensor.hpp"

namespace ttv {

enum class MediaKind { ColorImage, GrayVideo, ColorVideo };

struct MediaMapping {
  MediaKind kind = MediaKind::ColorImage;
  double peak = 1.0;
};

// Binary tensor container ".tns": magic "TNS1", u8 order, little-endian u64
// extents, then little-endian f64 values in C-order. Round trips bit-exact.
Tensor load_tns(const std::string& path);
void save_tns(const Tensor& t, const std::string& path);

// Single 8-bit PNG. Gray loads as (h, w, 1), color as (h, w, 3); channel
// values map to [0,1] by v/255. Saving clamps to [0,1] and rounds half-up.
Tensor load_png(const std::string& path);
void save_png(const Tensor& t, const std::string& path);

// Directory of equally sized zero-padded PNG frames (frame_000000.png, ...).
// Gray frames stack to (h, w, frames), color frames to (h, w, 3, frames).
Tensor load_frame_dir(const std::string& path);
void save_frame_dir(const Tensor& t, const std::string& path);

/// Load any supported input, dispatching on path kind (.tns file, .png file,
/// or a directory of frames). When a mapping is given the loaded tensor must
/// conform to it.
Tensor load_media(const std::string& path, std::optional<MediaKind> kind = std::nullopt);

/// Save to .tns, .png, or a frame directory based on the output path. PNG
/// and frame outputs require tensor extents matching an image/video mapping.
void save_media(const Tensor& t, const std::string& path,
                std::optional<MediaKind> kind = std::nullopt);

}  // namespace ttv
