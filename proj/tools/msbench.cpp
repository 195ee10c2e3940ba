#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>
#include <unistd.h>

#include "msb/image.hpp"
#include "msb/kernels.hpp"
#include "msb/metrics.hpp"
#include "msb/png_io.hpp"
#include "msb/sampling.hpp"
#include "msb/synthesis.hpp"

namespace fs = std::filesystem;

namespace {

void apply_thread_cap() {
  const char* env = std::getenv("MSB_THREADS");
  if (env == nullptr || *env == '\0') return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || n < 1)
    throw std::runtime_error("MSB_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(n));
}

std::vector<fs::path> list_pngs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".png")
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  if (out.empty()) throw std::runtime_error("no PNG images in " + dir.string());
  return out;
}

msb::TaskProfile resolve_profile(const std::string& task, const std::string& profile_path) {
  if (task != "custom" && !profile_path.empty())
    throw std::runtime_error("--profile requires --task custom");
  if (task == "1") return msb::TaskProfile::task1();
  if (task == "2") return msb::TaskProfile::task2();
  if (profile_path.empty()) throw std::runtime_error("--task custom requires --profile");
  return msb::load_profile(profile_path);
}

msb::Image apply_method(const msb::Image& img, const std::string& method, double threshold) {
  if (method == "mf3") return msb::median_filter(img, 3);
  if (method == "mf5") return msb::median_filter(img, 5);
  if (method == "amf3") return msb::adaptive_median_filter(img, 3, threshold);
  if (method == "amf5") return msb::adaptive_median_filter(img, 5, threshold);
  throw std::runtime_error("unknown method: " + method);
}

void restore_directory(const fs::path& in_dir, const fs::path& out_dir,
                       const std::string& method, double threshold) {
  const std::vector<fs::path> inputs = list_pngs(in_dir);
  fs::create_directories(out_dir);
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const int n = static_cast<int>(inputs.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    if (failed.load(std::memory_order_relaxed)) continue;
    try {
      const fs::path& src = inputs[static_cast<std::size_t>(i)];
      msb::write_png(out_dir / src.filename(),
                     apply_method(msb::read_png(src), method, threshold));
    } catch (...) {
#pragma omp critical
      {
        if (!failure) failure = std::current_exception();
      }
      failed.store(true, std::memory_order_relaxed);
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void run_gen(const std::string& src, const std::string& out, const std::string& task,
             int pairs, std::uint64_t seed, const std::string& profile_path) {
  const msb::TaskProfile profile = resolve_profile(task, profile_path);
  const std::vector<fs::path> sources = list_pngs(src);
  msb::generate_dataset(sources, profile, seed, pairs, out);
  std::cout << "wrote " << pairs << " pairs to " << out << "\n";
}

void run_eval(const std::string& restored, const std::string& gt, const std::string& json_path) {
  msb::EvalReport report =
      msb::evaluate_directory(restored, gt, fs::path(restored).filename().string());
  write_text_file(json_path, msb::report_to_json(report));
  std::cout << msb::report_table({report});
}

void run_bench(const std::string& src, std::uint64_t seed, int pairs,
               const std::string& out_file, const std::string& work) {
  const std::vector<fs::path> sources = list_pngs(src);
  const bool keep_work = !work.empty();
  const fs::path work_dir =
      keep_work ? fs::path(work)
                : fs::temp_directory_path() /
                      ("msbench-work-" + std::to_string(::getpid()));

  const std::vector<std::string> methods = {"mf3", "mf5", "amf3", "amf5"};
  nlohmann::json out_json;
  out_json["pairs_per_task"] = pairs;
  out_json["seed"] = seed;
  std::string tables;

  for (int task = 1; task <= 2; ++task) {
    const fs::path corpus = work_dir / ("task" + std::to_string(task));
    const msb::TaskProfile profile =
        task == 1 ? msb::TaskProfile::task1() : msb::TaskProfile::task2();
    std::cerr << "generating task " << task << " corpus (" << pairs << " pairs)...\n";
    msb::generate_dataset(sources, profile, seed + static_cast<std::uint64_t>(task - 1),
                          pairs, corpus);

    std::vector<msb::EvalReport> reports;
    reports.push_back(msb::evaluate_directory(corpus / "degraded", corpus / "gt", "synthesized"));
    for (const std::string& method : methods) {
      std::cerr << "task " << task << ": " << method << "...\n";
      const fs::path restored = corpus / ("restored-" + method);
      restore_directory(corpus / "degraded", restored, method, 10.0);
      reports.push_back(msb::evaluate_directory(restored, corpus / "gt", method));
    }

    nlohmann::json task_json;
    for (const msb::EvalReport& r : reports)
      task_json[r.method] = nlohmann::json::parse(msb::report_to_json(r));
    out_json["task" + std::to_string(task)] = std::move(task_json);
    tables += "Task " + std::to_string(task) + "\n" + msb::report_table(reports) + "\n";
  }

  write_text_file(out_file, out_json.dump(2) + "\n");
  std::cout << tables << "report written to " << out_file << "\n";
  if (!keep_work) fs::remove_all(work_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Marine snow synthesis, restoration baselines and benchmark harness"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a paired clean/degraded dataset");
  std::string gen_src, gen_out, gen_task, gen_profile;
  int gen_pairs = 0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--src", gen_src, "Directory of source PNG images")->required();
  gen->add_option("--out", gen_out, "Output dataset directory")->required();
  gen->add_option("--task", gen_task, "Sampling profile: 1, 2 or custom")
      ->required()
      ->check(CLI::IsMember({"1", "2", "custom"}));
  gen->add_option("--pairs", gen_pairs, "Number of image pairs")
      ->required()
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Master seed")->required();
  gen->add_option("--profile", gen_profile, "Profile file, used with --task custom");
  gen->callback([&] { run_gen(gen_src, gen_out, gen_task, gen_pairs, gen_seed, gen_profile); });

  auto* restore = app.add_subcommand("restore", "Apply a baseline restoration method");
  std::string res_in, res_out, res_method;
  double res_threshold = 10.0;
  restore->add_option("--in", res_in, "Directory of degraded PNG images")->required();
  restore->add_option("--out", res_out, "Output directory")->required();
  restore->add_option("--method", res_method, "mf3, mf5, amf3 or amf5")
      ->required()
      ->check(CLI::IsMember({"mf3", "mf5", "amf3", "amf5"}));
  auto* thr_opt = restore->add_option("--threshold", res_threshold,
                                      "Brightness margin of the adaptive methods");
  thr_opt->check(CLI::NonNegativeNumber);
  restore->callback([&] {
    if (thr_opt->count() > 0 && res_method.rfind("amf", 0) != 0)
      throw std::runtime_error("--threshold only applies to amf3 / amf5");
    restore_directory(res_in, res_out, res_method, res_threshold);
  });

  auto* eval = app.add_subcommand("eval", "Score a restored directory against ground truth");
  std::string eval_restored, eval_gt, eval_json;
  eval->add_option("--restored", eval_restored, "Directory of restored PNG images")->required();
  eval->add_option("--gt", eval_gt, "Directory of ground-truth PNG images")->required();
  eval->add_option("--json", eval_json, "Report output file")->required();
  eval->callback([&] { run_eval(eval_restored, eval_gt, eval_json); });

  auto* bench = app.add_subcommand(
      "bench", "Generate both task corpora, run all baselines and report");
  std::string bench_src, bench_out, bench_work;
  int bench_pairs = 50;
  std::uint64_t bench_seed = 0;
  bench->add_option("--src", bench_src, "Directory of source PNG images")->required();
  bench->add_option("--seed", bench_seed, "Master seed (task 2 uses seed + 1)");
  bench->add_option("--pairs", bench_pairs, "Pairs per task")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "Report JSON output file")->required();
  bench->add_option("--work", bench_work,
                    "Keep intermediate corpora in this directory (default: temp, removed)");
  bench->callback(
      [&] { run_bench(bench_src, bench_seed, bench_pairs, bench_out, bench_work); });

  try {
    apply_thread_cap();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
