#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "msb/artifact_model.hpp"
#include "msb/rng.hpp"

namespace msb {

enum class SizeClass { kSmall, kLarge };

struct ValueRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct IntRange {
  int lo = 0;
  int hi = 0;
};

// Full sampling configuration of a dataset task. The presets task1() and
// task2() carry the stock parameter ranges; "custom" profiles may override
// any field and are serializable as key = value text (see
// serialize_profile for the exact keys).
struct TaskProfile {
  std::string name = "custom";  // "task1" | "task2" | "custom"
  int image_size = 384;
  IntRange artifact_count{100, 600};
  double p_highland = 0.7;  // else volcanic
  double p_small = 1.0;     // else large
  ValueRange core_a_small{1.0, 3.0};          // a2, open interval
  ValueRange core_a_large{3.0, 16.0};
  ValueRange core_b_factor_small{0.3, 1.0};   // b2 = a2 * factor
  ValueRange core_b_factor_large{0.8, 1.0};
  ValueRange outer_a_factor{1.0, 2.0};        // a1 = a2 * factor
  ValueRange rim_a_factor{0.5, 1.0};          // a3 = a2 * factor
  IntRange core_intensity{10, 80};            // c, inclusive
  IntRange rim_height{1, 40};                 // c_r, inclusive
  IntRange blur_radius{1, 6};                 // r, inclusive
  double roughness_amplitude = 5.0;
  // When set, the Gaussian term of each composite comes from the untouched
  // clean image instead of the working image accumulated so far.
  bool blur_clean_reference = false;

  static TaskProfile task1();
  static TaskProfile task2();

  void validate() const;  // throws std::invalid_argument
};

std::string serialize_profile(const TaskProfile& profile);
TaskProfile parse_profile(std::string_view text);
TaskProfile load_profile(const std::filesystem::path& path);
void save_profile(const std::filesystem::path& path, const TaskProfile& profile);

struct ArtifactPlan {
  int order = 0;
  ArtifactGeometry geometry;
  ArtifactAppearance appearance;
};

// Geometry draw: a2 from the size class's range, b2 = a2 * factor, outer
// and rim axes scaled from a2 with the core's eccentricity, theta uniform
// in [0, pi), center uniform over the image rectangle. Continuous ranges
// are sampled with open bounds so every strict ordering invariant holds.
ArtifactGeometry sample_geometry(const TaskProfile& profile, SizeClass size_class,
                                 ArtifactKind kind, Sampler& sampler);

// Per-channel c (and c_r for volcanic) drawn independently; one blur
// radius per artifact.
ArtifactAppearance sample_appearance(ArtifactKind kind, const TaskProfile& profile,
                                     Sampler& sampler);

// Plans one image: N from artifact_count, then per artifact a kind, size
// class, geometry and appearance, each from its own substream of
// `image_stream` so the sequence is reproducible and order-independent.
std::vector<ArtifactPlan> plan_image(const TaskProfile& profile,
                                     const RandomStream& image_stream);

}  // namespace msb
