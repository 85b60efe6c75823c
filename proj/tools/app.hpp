#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hurstlab/dfa.hpp"
#include "hurstlab/error.hpp"

namespace hurstlab::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kNumericFailure = 3 };

ExitCode exit_code_for(ErrorKind kind) noexcept;

// Entry point shared by main() and the tests. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct Preprocess {
  bool emd = false;
  std::size_t drop = 1;
};

struct AnalysisOptions {
  Preprocess preprocess;
  dfa::DfaConfig config;
  double band = 0.02;
};

struct Analysis {
  dfa::FluctuationCurve curve;
  dfa::HurstEstimate estimate;
  nlohmann::json report;
};

// Full single-file pipeline: read, optional EMD denoise, DFA, fit. The report
// body holds no wall-clock values.
Analysis analyze_file(const std::filesystem::path& input, const AnalysisOptions& options);

// Worker count for batch commands: requested (0 = hardware concurrency), capped by
// the HURSTLAB_THREADS environment variable.
unsigned thread_count(unsigned requested);

std::string render_curve_svg(const nlohmann::json& report);
std::string render_histogram_svg(const std::vector<std::pair<double, double>>& bins);

}  // namespace hurstlab::cli
