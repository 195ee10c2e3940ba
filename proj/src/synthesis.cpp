#include "msb/synthesis.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "msb/kernels.hpp"
#include "msb/png_io.hpp"

namespace msb {

namespace {

using nlohmann::json;

void snap_to_8bit(Image& img) {
  for (float& v : img.data) v = static_cast<float>(quantize_sample(v));
}

std::string pair_basename(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%05d.png", index);
  return buf;
}

json plan_to_json(const ArtifactPlan& plan) {
  const ArtifactGeometry& g = plan.geometry;
  const ArtifactAppearance& a = plan.appearance;
  json j;
  j["order"] = plan.order;
  j["kind"] = a.kind == ArtifactKind::kHighland ? "highland" : "volcanic";
  j["center_row"] = g.center_row;
  j["center_col"] = g.center_col;
  j["theta"] = g.theta;
  j["outer"] = {{"a", g.outer.a}, {"b", g.outer.b}};
  j["core"] = {{"a", g.core.a}, {"b", g.core.b}};
  if (g.rim) j["rim"] = {{"a", g.rim->a}, {"b", g.rim->b}};
  j["core_intensity"] = a.core_intensity;
  if (a.kind == ArtifactKind::kVolcanic) j["rim_height"] = a.rim_height;
  j["roughness_amplitude"] = a.roughness_amplitude;
  j["blur_radius"] = a.blur_radius;
  return j;
}

ArtifactPlan plan_from_json(const json& j) {
  ArtifactPlan plan;
  plan.order = j.at("order").get<int>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "highland" && kind != "volcanic")
    throw std::runtime_error("manifest: unknown artifact kind '" + kind + "'");
  plan.appearance.kind =
      kind == "highland" ? ArtifactKind::kHighland : ArtifactKind::kVolcanic;
  plan.geometry.center_row = j.at("center_row").get<double>();
  plan.geometry.center_col = j.at("center_col").get<double>();
  plan.geometry.theta = j.at("theta").get<double>();
  plan.geometry.outer = {j.at("outer").at("a").get<double>(), j.at("outer").at("b").get<double>()};
  plan.geometry.core = {j.at("core").at("a").get<double>(), j.at("core").at("b").get<double>()};
  if (j.contains("rim"))
    plan.geometry.rim = Ellipse{j.at("rim").at("a").get<double>(), j.at("rim").at("b").get<double>()};
  plan.appearance.core_intensity = j.at("core_intensity").get<std::array<int, 3>>();
  if (j.contains("rim_height"))
    plan.appearance.rim_height = j.at("rim_height").get<std::array<int, 3>>();
  plan.appearance.roughness_amplitude = j.at("roughness_amplitude").get<double>();
  plan.appearance.blur_radius = j.at("blur_radius").get<int>();
  return plan;
}

}  // namespace

void composite_artifact_inplace(Image& working, const ArtifactPatch& patch,
                                const Image& blur_source, int blur_radius) {
  if (patch.empty()) return;
  if (!working.same_size(blur_source))
    throw std::invalid_argument("working image and blur source differ in size");
  const Image g = gaussian_blur_region(blur_source, patch.box, blur_radius);
  for (int c = 0; c < Image::kChannels; ++c) {
    for (int y = 0; y < patch.box.height; ++y) {
      float* row = working.plane(c) +
                   static_cast<std::size_t>(patch.box.top + y) * working.width + patch.box.left;
      const float* grow = g.plane(c) + static_cast<std::size_t>(y) * g.width;
      for (int x = 0; x < patch.box.width; ++x) {
        if (!patch.inside(y, x)) continue;
        row[x] = std::min(255.0f, std::max(0.0f, patch.value(c, y, x) + grow[x]));
      }
    }
  }
}

Image composite_artifact(const Image& current, const ArtifactPatch& patch, int blur_radius) {
  Image out = current;
  composite_artifact_inplace(out, patch, current, blur_radius);
  return out;
}

SynthesisResult synthesize_pair(const Image& clean, const TaskProfile& profile,
                                const RandomStream& image_stream) {
  if (clean.height != profile.image_size || clean.width != profile.image_size)
    throw std::invalid_argument("clean image does not match the profile's image size");
  SynthesisResult result{clean, plan_image(profile, image_stream)};
  for (const ArtifactPlan& plan : result.plans) {
    const RandomStream artifact_stream =
        image_stream.substream(stream_salt::kArtifact, static_cast<std::uint64_t>(plan.order));
    const ArtifactPatch patch = render_artifact(plan.geometry, plan.appearance, artifact_stream,
                                                clean.height, clean.width);
    composite_artifact_inplace(result.degraded, patch,
                               profile.blur_clean_reference ? clean : result.degraded,
                               plan.appearance.blur_radius);
  }
  return result;
}

std::string manifest_to_json(const DatasetManifest& manifest) {
  json j;
  j["format_version"] = manifest.format_version;
  j["master_seed"] = manifest.master_seed;
  j["profile"] = serialize_profile(manifest.profile);
  json pairs = json::array();
  for (const ManifestPair& p : manifest.pairs) {
    json jp;
    jp["index"] = p.index;
    jp["source"] = p.source;
    jp["image_seed"] = p.image_seed;
    jp["gt_file"] = p.gt_file;
    jp["degraded_file"] = p.degraded_file;
    jp["artifact_count"] = p.plans.size();
    json plans = json::array();
    for (const ArtifactPlan& plan : p.plans) plans.push_back(plan_to_json(plan));
    jp["artifacts"] = std::move(plans);
    pairs.push_back(std::move(jp));
  }
  j["pairs"] = std::move(pairs);
  return j.dump(2) + "\n";
}

DatasetManifest manifest_from_json(const std::string& text) {
  const json j = json::parse(text);
  DatasetManifest m;
  m.format_version = j.at("format_version").get<int>();
  if (m.format_version != 1)
    throw std::runtime_error("unsupported manifest format_version " +
                             std::to_string(m.format_version));
  m.master_seed = j.at("master_seed").get<std::uint64_t>();
  m.profile = parse_profile(j.at("profile").get<std::string>());
  for (const json& jp : j.at("pairs")) {
    ManifestPair p;
    p.index = jp.at("index").get<int>();
    p.source = jp.at("source").get<std::string>();
    p.image_seed = jp.at("image_seed").get<std::uint64_t>();
    p.gt_file = jp.at("gt_file").get<std::string>();
    p.degraded_file = jp.at("degraded_file").get<std::string>();
    const auto count = jp.at("artifact_count").get<std::size_t>();
    for (const json& jplan : jp.at("artifacts")) p.plans.push_back(plan_from_json(jplan));
    if (p.plans.size() != count)
      throw std::runtime_error("manifest pair " + std::to_string(p.index) +
                               ": artifact_count disagrees with the artifact list");
    m.pairs.push_back(std::move(p));
  }
  return m;
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest: " + path.string());
  out << manifest_to_json(manifest);
  if (!out) throw std::runtime_error("failed writing manifest: " + path.string());
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return manifest_from_json(buf.str());
}

DatasetManifest generate_dataset(const std::vector<std::filesystem::path>& sources,
                                 const TaskProfile& profile, std::uint64_t master_seed,
                                 int pair_count, const std::filesystem::path& out_dir) {
  profile.validate();
  if (sources.empty()) throw std::invalid_argument("no source images given");
  if (pair_count < 1) throw std::invalid_argument("pair count must be at least 1");
  for (const auto& src : sources)
    if (!std::filesystem::exists(src))
      throw std::runtime_error("source image not found: " + src.string());

  std::filesystem::create_directories(out_dir / "gt");
  std::filesystem::create_directories(out_dir / "degraded");

  DatasetManifest manifest;
  manifest.master_seed = master_seed;
  manifest.profile = profile;
  manifest.pairs.resize(static_cast<std::size_t>(pair_count));

  const RandomStream master(master_seed);
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < pair_count; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      const std::filesystem::path& src = sources[static_cast<std::size_t>(i) % sources.size()];
      Image clean = prepare_source(read_png(src), profile.image_size);
      snap_to_8bit(clean);

      const RandomStream image_stream =
          master.substream(stream_salt::kImage, static_cast<std::uint64_t>(i));
      SynthesisResult result = synthesize_pair(clean, profile, image_stream);

      const std::string name = pair_basename(i);
      write_png(out_dir / "gt" / name, clean);
      write_png(out_dir / "degraded" / name, result.degraded);

      ManifestPair& entry = manifest.pairs[static_cast<std::size_t>(i)];
      entry.index = i;
      entry.source = src.filename().string();
      entry.image_seed = image_stream.key();
      entry.gt_file = "gt/" + name;
      entry.degraded_file = "degraded/" + name;
      entry.plans = std::move(result.plans);
    } catch (...) {
#pragma omp critical
      {
        if (!failure) failure = std::current_exception();
      }
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (failure) std::rethrow_exception(failure);

  save_manifest(out_dir / "manifest.json", manifest);
  return manifest;
}

Image replay_pair(const Image& clean, const TaskProfile& profile, std::uint64_t image_seed) {
  return synthesize_pair(clean, profile, RandomStream::from_key(image_seed)).degraded;
}

}  // namespace msb
