#include "msb/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "msb/png_io.hpp"

namespace msb {

namespace {

// Row-major partial sums keep reductions independent of traversal
// grouping, so results are identical for any thread count.
double sum_rows(const std::vector<double>& row_sums) {
  double total = 0.0;
  for (double v : row_sums) total += v;
  return total;
}

std::vector<double> ssim_window_weights() {
  constexpr int kRadius = 5;
  constexpr double kSigma = 1.5;
  std::vector<double> w(2 * kRadius + 1);
  double total = 0.0;
  for (int i = -kRadius; i <= kRadius; ++i) {
    w[i + kRadius] = std::exp(-(i * i) / (2.0 * kSigma * kSigma));
    total += w[i + kRadius];
  }
  for (double& v : w) v /= total;
  return w;
}

std::vector<std::string> png_names(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("not a directory: " + dir.string());
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".png")
      names.push_back(entry.path().filename().string());
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

double psnr(const Image& a, const Image& b) {
  if (!a.same_size(b)) throw std::invalid_argument("image size mismatch");
  std::vector<double> row_sums(static_cast<std::size_t>(a.height), 0.0);
  for (int c = 0; c < Image::kChannels; ++c) {
    const float* pa = a.plane(c);
    const float* pb = b.plane(c);
#pragma omp parallel for
    for (int y = 0; y < a.height; ++y) {
      double acc = 0.0;
      const std::size_t base = static_cast<std::size_t>(y) * a.width;
      for (int x = 0; x < a.width; ++x) {
        const double d = static_cast<double>(pa[base + x]) - pb[base + x];
        acc += d * d;
      }
      row_sums[static_cast<std::size_t>(y)] += acc;
    }
  }
  const double mse =
      sum_rows(row_sums) / (static_cast<double>(a.plane_size()) * Image::kChannels);
  if (mse == 0.0) return 100.0;
  return std::min(100.0, 10.0 * std::log10(255.0 * 255.0 / mse));
}

double ssim(const Image& a, const Image& b) {
  if (!a.same_size(b)) throw std::invalid_argument("image size mismatch");
  constexpr int kRadius = 5;
  constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
  constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
  if (a.height < 2 * kRadius + 1 || a.width < 2 * kRadius + 1)
    throw std::invalid_argument("image smaller than the 11x11 window");

  static const std::vector<double> w = ssim_window_weights();
  const int vh = a.height - 2 * kRadius;  // valid map size
  const int vw = a.width - 2 * kRadius;
  const std::size_t hcols = static_cast<std::size_t>(vw);

  // Five windowed moments via separable weighted sums: means of a and b,
  // and raw second moments aa, bb, ab.
  std::vector<double> h(static_cast<std::size_t>(a.height) * hcols * 5);
  std::vector<double> row_sums(static_cast<std::size_t>(vh), 0.0);

  double channel_total = 0.0;
  for (int c = 0; c < Image::kChannels; ++c) {
    const float* pa = a.plane(c);
    const float* pb = b.plane(c);
#pragma omp parallel for
    for (int y = 0; y < a.height; ++y) {
      const std::size_t base = static_cast<std::size_t>(y) * a.width;
      double* out = h.data() + static_cast<std::size_t>(y) * hcols * 5;
      for (int x = 0; x < vw; ++x) {
        double ma = 0.0, mb = 0.0, aa = 0.0, bb = 0.0, ab = 0.0;
        for (int k = 0; k <= 2 * kRadius; ++k) {
          const double va = pa[base + x + k];
          const double vb = pb[base + x + k];
          const double wk = w[static_cast<std::size_t>(k)];
          ma += wk * va;
          mb += wk * vb;
          aa += wk * va * va;
          bb += wk * vb * vb;
          ab += wk * va * vb;
        }
        out[x * 5 + 0] = ma;
        out[x * 5 + 1] = mb;
        out[x * 5 + 2] = aa;
        out[x * 5 + 3] = bb;
        out[x * 5 + 4] = ab;
      }
    }
#pragma omp parallel for
    for (int y = 0; y < vh; ++y) {
      double acc = 0.0;
      for (int x = 0; x < vw; ++x) {
        double m[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
        for (int k = 0; k <= 2 * kRadius; ++k) {
          const double* src = h.data() + (static_cast<std::size_t>(y + k) * hcols + x) * 5;
          const double wk = w[static_cast<std::size_t>(k)];
          for (int j = 0; j < 5; ++j) m[j] += wk * src[j];
        }
        const double mu_a = m[0], mu_b = m[1];
        const double var_a = m[2] - mu_a * mu_a;
        const double var_b = m[3] - mu_b * mu_b;
        const double cov = m[4] - mu_a * mu_b;
        const double num = (2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2);
        const double den = (mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2);
        acc += num / den;
      }
      row_sums[static_cast<std::size_t>(y)] = acc;
    }
    channel_total += sum_rows(row_sums) / (static_cast<double>(vh) * vw);
  }
  return channel_total / Image::kChannels;
}

EvalReport make_report(std::string method, std::vector<PairScore> pairs) {
  EvalReport report;
  report.method = std::move(method);
  report.pairs = std::move(pairs);
  std::sort(report.pairs.begin(), report.pairs.end(),
            [](const PairScore& x, const PairScore& y) { return x.name < y.name; });
  report.count = static_cast<int>(report.pairs.size());
  if (report.count == 0) return report;
  double sp = 0.0, ss = 0.0;
  for (const PairScore& p : report.pairs) {
    sp += p.psnr;
    ss += p.ssim;
  }
  report.mean_psnr = sp / report.count;
  report.mean_ssim = ss / report.count;
  double vp = 0.0, vs = 0.0;
  for (const PairScore& p : report.pairs) {
    vp += (p.psnr - report.mean_psnr) * (p.psnr - report.mean_psnr);
    vs += (p.ssim - report.mean_ssim) * (p.ssim - report.mean_ssim);
  }
  report.stddev_psnr = std::sqrt(vp / report.count);
  report.stddev_ssim = std::sqrt(vs / report.count);
  return report;
}

EvalReport evaluate_directory(const std::filesystem::path& restored_dir,
                              const std::filesystem::path& gt_dir, std::string method) {
  const std::vector<std::string> restored = png_names(restored_dir);
  const std::vector<std::string> gt = png_names(gt_dir);
  if (restored != gt) {
    const std::set<std::string> rs(restored.begin(), restored.end());
    const std::set<std::string> gs(gt.begin(), gt.end());
    std::string msg = "image sets differ;";
    for (const std::string& n : gt)
      if (!rs.count(n)) msg += " missing from restored: " + n + ";";
    for (const std::string& n : restored)
      if (!gs.count(n)) msg += " extra in restored: " + n + ";";
    throw std::runtime_error(msg);
  }
  if (restored.empty())
    throw std::runtime_error("no PNG images in " + restored_dir.string());

  std::vector<PairScore> scores(restored.size());
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const int n = static_cast<int>(restored.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      const std::string& name = restored[static_cast<std::size_t>(i)];
      const Image r = read_png(restored_dir / name);
      const Image g = read_png(gt_dir / name);
      if (!r.same_size(g))
        throw std::runtime_error("size mismatch for " + name);
      scores[static_cast<std::size_t>(i)] = {name, psnr(r, g), ssim(r, g)};
    } catch (...) {
#pragma omp critical
      {
        if (!failure) failure = std::current_exception();
      }
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (failure) std::rethrow_exception(failure);
  return make_report(std::move(method), std::move(scores));
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["method"] = report.method;
  j["count"] = report.count;
  j["mean_psnr"] = report.mean_psnr;
  j["stddev_psnr"] = report.stddev_psnr;
  j["mean_ssim"] = report.mean_ssim;
  j["stddev_ssim"] = report.stddev_ssim;
  nlohmann::json pairs = nlohmann::json::array();
  for (const PairScore& p : report.pairs)
    pairs.push_back({{"name", p.name}, {"psnr", p.psnr}, {"ssim", p.ssim}});
  j["pairs"] = std::move(pairs);
  return j.dump(2) + "\n";
}

std::string report_table(const std::vector<EvalReport>& reports) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-16s %6s %10s %9s %10s %9s\n", "method", "count",
                "mean PSNR", "std", "mean SSIM", "std");
  out << line;
  for (const EvalReport& r : reports) {
    std::snprintf(line, sizeof(line), "%-16s %6d %10.2f %9.2f %10.4f %9.4f\n",
                  r.method.c_str(), r.count, r.mean_psnr, r.stddev_psnr, r.mean_ssim,
                  r.stddev_ssim);
    out << line;
  }
  return out.str();
}

}  // namespace msb
