#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "msb/artifact_model.hpp"
#include "msb/image.hpp"
#include "msb/rng.hpp"
#include "msb/sampling.hpp"

namespace msb {

// Additive composite of one rendered artifact: inside the patch's support
// mask, out = clamp(M + G, 0, 255) where G is the Gaussian blur of
// `blur_source` over the patch box; every other pixel keeps its value
// bit-exactly. `blur_source` may alias `working`.
void composite_artifact_inplace(Image& working, const ArtifactPatch& patch,
                                const Image& blur_source, int blur_radius);

// Same composite with G taken from `current` itself.
Image composite_artifact(const Image& current, const ArtifactPatch& patch, int blur_radius);

struct SynthesisResult {
  Image degraded;
  std::vector<ArtifactPlan> plans;
};

// Plans and composites all artifacts for one image, sequentially by order
// index, so overlapping artifacts stack. Each step blurs the working image
// accumulated so far, or the pristine clean image when
// profile.blur_clean_reference is set. The clean image must already be
// profile.image_size square.
SynthesisResult synthesize_pair(const Image& clean, const TaskProfile& profile,
                                const RandomStream& image_stream);

struct ManifestPair {
  int index = 0;
  std::string source;            // source image file name
  std::uint64_t image_seed = 0;  // key of the pair's random stream
  std::string gt_file;           // path relative to the dataset root
  std::string degraded_file;
  std::vector<ArtifactPlan> plans;
};

struct DatasetManifest {
  int format_version = 1;
  std::uint64_t master_seed = 0;
  TaskProfile profile;
  std::vector<ManifestPair> pairs;
};

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const std::string& text);
void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest load_manifest(const std::filesystem::path& path);

// Writes pair_count (ground truth, degraded) pairs to <out>/gt/NNNNN.png
// and <out>/degraded/NNNNN.png plus <out>/manifest.json. Sources are used
// in the given order and cycled when fewer than pair_count; each is
// center-cropped, resampled to profile.image_size and snapped to 8-bit
// before synthesis, so a stored ground-truth PNG plus its manifest entry
// replays the degraded image bit-exactly. Pair i draws from the substream
// (master_seed, i), making pairs independent and parallel-safe.
DatasetManifest generate_dataset(const std::vector<std::filesystem::path>& sources,
                                 const TaskProfile& profile, std::uint64_t master_seed,
                                 int pair_count, const std::filesystem::path& out_dir);

// Recomputes a degraded image from a stored clean image and the pair's
// seed, as recorded in a manifest entry.
Image replay_pair(const Image& clean, const TaskProfile& profile, std::uint64_t image_seed);

}  // namespace msb
