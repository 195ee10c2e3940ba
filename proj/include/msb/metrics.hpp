#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "msb/image.hpp"

namespace msb {

// Peak signal-to-noise ratio in dB over the channel-joint mean squared
// error of all pixels; capped at 100 dB so identical images aggregate to a
// finite mean.
double psnr(const Image& a, const Image& b);

// Single-scale structural similarity: 11x11 Gaussian window (sigma 1.5),
// K1 = 0.01, K2 = 0.03, L = 255, evaluated per channel at every position
// where the window fits entirely inside the image, map mean averaged over
// channels. Requires min(H, W) >= 11.
double ssim(const Image& a, const Image& b);

struct PairScore {
  std::string name;
  double psnr = 0.0;
  double ssim = 0.0;
};

struct EvalReport {
  std::string method;
  std::vector<PairScore> pairs;  // sorted by name
  int count = 0;
  double mean_psnr = 0.0;
  double stddev_psnr = 0.0;
  double mean_ssim = 0.0;
  double stddev_ssim = 0.0;
};

// Builds an EvalReport from per-pair scores (sorts by name, fills the
// aggregates; standard deviation is the population form).
EvalReport make_report(std::string method, std::vector<PairScore> pairs);

// Pairs the PNG files of the two directories by file name and scores each
// pair. A name-set mismatch raises an error listing the differing names.
EvalReport evaluate_directory(const std::filesystem::path& restored_dir,
                              const std::filesystem::path& gt_dir, std::string method);

std::string report_to_json(const EvalReport& report);

// Fixed-width text table, one row per report.
std::string report_table(const std::vector<EvalReport>& reports);

}  // namespace msb
