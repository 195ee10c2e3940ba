#include "msb/sampling.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace msb {

TaskProfile TaskProfile::task1() {
  TaskProfile p;
  p.name = "task1";
  p.p_small = 1.0;
  return p;
}

TaskProfile TaskProfile::task2() {
  TaskProfile p;
  p.name = "task2";
  p.p_small = 0.7;
  return p;
}

namespace {

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " must be in [0, 1]");
}

void check_range(const ValueRange& r, const char* name) {
  if (!(r.lo <= r.hi)) throw std::invalid_argument(std::string(name) + ": min > max");
  if (!(r.lo > 0.0)) throw std::invalid_argument(std::string(name) + ": bounds must be positive");
}

void check_range(const IntRange& r, const char* name) {
  if (r.lo > r.hi) throw std::invalid_argument(std::string(name) + ": min > max");
}

}  // namespace

void TaskProfile::validate() const {
  if (name != "task1" && name != "task2" && name != "custom")
    throw std::invalid_argument("profile name must be task1, task2 or custom");
  if (image_size < 1) throw std::invalid_argument("image_size must be >= 1");
  check_range(artifact_count, "count");
  if (artifact_count.lo < 0) throw std::invalid_argument("count must be non-negative");
  check_prob(p_highland, "p_highland");
  check_prob(p_small, "p_small");
  check_range(core_a_small, "core_a_small");
  check_range(core_a_large, "core_a_large");
  check_range(core_b_factor_small, "core_b_factor_small");
  check_range(core_b_factor_large, "core_b_factor_large");
  check_range(outer_a_factor, "outer_a_factor");
  check_range(rim_a_factor, "rim_a_factor");
  if (core_b_factor_small.hi > 1.0 || core_b_factor_large.hi > 1.0)
    throw std::invalid_argument("core_b_factor must stay <= 1 so b2 <= a2");
  if (outer_a_factor.lo < 1.0)
    throw std::invalid_argument("outer_a_factor must be >= 1 so the outer ellipse contains the core");
  if (rim_a_factor.hi > 1.0)
    throw std::invalid_argument("rim_a_factor must stay <= 1 so the rim sits inside the core");
  check_range(core_intensity, "core_intensity");
  if (core_intensity.lo < 0) throw std::invalid_argument("core_intensity must be non-negative");
  check_range(rim_height, "rim_height");
  if (rim_height.lo < 0) throw std::invalid_argument("rim_height must be non-negative");
  check_range(blur_radius, "blur_radius");
  if (blur_radius.lo < 1) throw std::invalid_argument("blur_radius must be >= 1");
  if (roughness_amplitude < 0.0)
    throw std::invalid_argument("roughness_amplitude must be non-negative");
}

namespace {

const char* bool_str(bool v) { return v ? "true" : "false"; }

}  // namespace

std::string serialize_profile(const TaskProfile& p) {
  std::ostringstream out;
  out.precision(17);
  out << "name = " << p.name << "\n"
      << "image_size = " << p.image_size << "\n"
      << "count_min = " << p.artifact_count.lo << "\n"
      << "count_max = " << p.artifact_count.hi << "\n"
      << "p_highland = " << p.p_highland << "\n"
      << "p_small = " << p.p_small << "\n"
      << "core_a_small_min = " << p.core_a_small.lo << "\n"
      << "core_a_small_max = " << p.core_a_small.hi << "\n"
      << "core_a_large_min = " << p.core_a_large.lo << "\n"
      << "core_a_large_max = " << p.core_a_large.hi << "\n"
      << "core_b_factor_small_min = " << p.core_b_factor_small.lo << "\n"
      << "core_b_factor_small_max = " << p.core_b_factor_small.hi << "\n"
      << "core_b_factor_large_min = " << p.core_b_factor_large.lo << "\n"
      << "core_b_factor_large_max = " << p.core_b_factor_large.hi << "\n"
      << "outer_a_factor_min = " << p.outer_a_factor.lo << "\n"
      << "outer_a_factor_max = " << p.outer_a_factor.hi << "\n"
      << "rim_a_factor_min = " << p.rim_a_factor.lo << "\n"
      << "rim_a_factor_max = " << p.rim_a_factor.hi << "\n"
      << "core_intensity_min = " << p.core_intensity.lo << "\n"
      << "core_intensity_max = " << p.core_intensity.hi << "\n"
      << "rim_height_min = " << p.rim_height.lo << "\n"
      << "rim_height_max = " << p.rim_height.hi << "\n"
      << "blur_radius_min = " << p.blur_radius.lo << "\n"
      << "blur_radius_max = " << p.blur_radius.hi << "\n"
      << "roughness_amplitude = " << p.roughness_amplitude << "\n"
      << "blur_reference = " << (p.blur_clean_reference ? "clean" : "current") << "\n";
  return out.str();
}

TaskProfile parse_profile(std::string_view text) {
  TaskProfile p;
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("profile line " + std::to_string(lineno) +
                                  ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  const auto take = [&kv](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::string();
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const auto as_int = [](const std::string& v, const char* key) {
    std::size_t pos = 0;
    const int out = std::stoi(v, &pos);
    if (pos != v.size())
      throw std::invalid_argument(std::string("profile key ") + key + ": bad integer '" + v + "'");
    return out;
  };
  const auto as_double = [](const std::string& v, const char* key) {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size())
      throw std::invalid_argument(std::string("profile key ") + key + ": bad number '" + v + "'");
    return out;
  };
  const auto set_int = [&](const char* key, int& field) {
    if (const std::string v = take(key); !v.empty()) field = as_int(v, key);
  };
  const auto set_double = [&](const char* key, double& field) {
    if (const std::string v = take(key); !v.empty()) field = as_double(v, key);
  };

  if (const std::string v = take("name"); !v.empty()) p.name = v;
  if (p.name == "task1")
    p = TaskProfile::task1();
  else if (p.name == "task2")
    p = TaskProfile::task2();
  set_int("image_size", p.image_size);
  set_int("count_min", p.artifact_count.lo);
  set_int("count_max", p.artifact_count.hi);
  set_double("p_highland", p.p_highland);
  set_double("p_small", p.p_small);
  set_double("core_a_small_min", p.core_a_small.lo);
  set_double("core_a_small_max", p.core_a_small.hi);
  set_double("core_a_large_min", p.core_a_large.lo);
  set_double("core_a_large_max", p.core_a_large.hi);
  set_double("core_b_factor_small_min", p.core_b_factor_small.lo);
  set_double("core_b_factor_small_max", p.core_b_factor_small.hi);
  set_double("core_b_factor_large_min", p.core_b_factor_large.lo);
  set_double("core_b_factor_large_max", p.core_b_factor_large.hi);
  set_double("outer_a_factor_min", p.outer_a_factor.lo);
  set_double("outer_a_factor_max", p.outer_a_factor.hi);
  set_double("rim_a_factor_min", p.rim_a_factor.lo);
  set_double("rim_a_factor_max", p.rim_a_factor.hi);
  set_int("core_intensity_min", p.core_intensity.lo);
  set_int("core_intensity_max", p.core_intensity.hi);
  set_int("rim_height_min", p.rim_height.lo);
  set_int("rim_height_max", p.rim_height.hi);
  set_int("blur_radius_min", p.blur_radius.lo);
  set_int("blur_radius_max", p.blur_radius.hi);
  set_double("roughness_amplitude", p.roughness_amplitude);
  if (const std::string v = take("blur_reference"); !v.empty()) {
    if (v == "clean")
      p.blur_clean_reference = true;
    else if (v == "current")
      p.blur_clean_reference = false;
    else
      throw std::invalid_argument("blur_reference must be 'current' or 'clean', got '" + v + "'");
  }

  if (!kv.empty())
    throw std::invalid_argument("unknown profile key: " + kv.begin()->first);
  p.validate();
  return p;
}

TaskProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile(buf.str());
}

void save_profile(const std::filesystem::path& path, const TaskProfile& profile) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write profile: " + path.string());
  out << serialize_profile(profile);
}

ArtifactGeometry sample_geometry(const TaskProfile& profile, SizeClass size_class,
                                 ArtifactKind kind, Sampler& sampler) {
  const bool small = size_class == SizeClass::kSmall;
  const ValueRange& a_range = small ? profile.core_a_small : profile.core_a_large;
  const ValueRange& b_range = small ? profile.core_b_factor_small : profile.core_b_factor_large;

  ArtifactGeometry g;
  const double core_a = sampler.uniform_open(a_range.lo, a_range.hi);
  const double core_b = core_a * sampler.uniform_open(b_range.lo, b_range.hi);
  const double outer_a =
      core_a * sampler.uniform_open(profile.outer_a_factor.lo, profile.outer_a_factor.hi);
  g.core = {core_a, core_b};
  // b1 (and b3) follow from the core's eccentricity.
  g.outer = {outer_a, outer_a * (core_b / core_a)};
  if (kind == ArtifactKind::kVolcanic) {
    const double rim_a =
        core_a * sampler.uniform_open(profile.rim_a_factor.lo, profile.rim_a_factor.hi);
    g.rim = Ellipse{rim_a, rim_a * (core_b / core_a)};
  }
  g.theta = sampler.uniform(0.0, std::numbers::pi);
  g.center_row = sampler.uniform(0.0, static_cast<double>(profile.image_size));
  g.center_col = sampler.uniform(0.0, static_cast<double>(profile.image_size));
  g.validate();
  return g;
}

ArtifactAppearance sample_appearance(ArtifactKind kind, const TaskProfile& profile,
                                     Sampler& sampler) {
  ArtifactAppearance app;
  app.kind = kind;
  for (int t = 0; t < 3; ++t)
    app.core_intensity[t] = sampler.uniform_int(profile.core_intensity.lo, profile.core_intensity.hi);
  if (kind == ArtifactKind::kVolcanic)
    for (int t = 0; t < 3; ++t)
      app.rim_height[t] = sampler.uniform_int(profile.rim_height.lo, profile.rim_height.hi);
  app.blur_radius = sampler.uniform_int(profile.blur_radius.lo, profile.blur_radius.hi);
  app.roughness_amplitude = profile.roughness_amplitude;
  app.validate();
  return app;
}

std::vector<ArtifactPlan> plan_image(const TaskProfile& profile,
                                     const RandomStream& image_stream) {
  profile.validate();
  Sampler image_sampler(image_stream);
  const int n = image_sampler.uniform_int(profile.artifact_count.lo, profile.artifact_count.hi);

  std::vector<ArtifactPlan> plans;
  plans.reserve(n);
  for (int i = 0; i < n; ++i) {
    Sampler s(image_stream.substream(stream_salt::kArtifact, i));
    const ArtifactKind kind =
        s.bernoulli(profile.p_highland) ? ArtifactKind::kHighland : ArtifactKind::kVolcanic;
    const SizeClass size = s.bernoulli(profile.p_small) ? SizeClass::kSmall : SizeClass::kLarge;
    ArtifactPlan plan;
    plan.order = i;
    plan.geometry = sample_geometry(profile, size, kind, s);
    plan.appearance = sample_appearance(kind, profile, s);
    plans.push_back(std::move(plan));
  }
  return plans;
}

}  // namespace msb
