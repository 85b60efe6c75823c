#include "app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "hurstlab/hurstlab.hpp"

namespace hurstlab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

ExitCode exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Config: return kUsage;
    case ErrorKind::Numeric: return kNumericFailure;
    case ErrorKind::Io:
    case ErrorKind::Format:
    case ErrorKind::Data: return kDataError;
  }
  return kDataError;
}

unsigned thread_count(unsigned requested) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  if (const char* env = std::getenv("HURSTLAB_THREADS")) {
    unsigned cap = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
    if (ec == std::errc{} && ptr == s.data() + s.size() && cap > 0) n = std::min(n, cap);
  }
  return n;
}

Analysis analyze_file(const fs::path& input, const AnalysisOptions& options) {
  options.config.validate();
  SignalSeries series = read_signal(input);
  if (options.preprocess.emd) series = emd::denoise(series, options.preprocess.drop);

  Analysis a;
  a.curve = dfa::fluctuation_curve(series, options.config);
  a.estimate = dfa::fit_hurst(a.curve);

  json curve = json::array();
  for (const auto& p : a.curve.points) curve.push_back({{"s", p.scale}, {"F", p.fluctuation}});
  const auto& e = a.estimate;
  a.report = {
      {"schema_version", persist::kSchemaVersion},
      {"kind", "analysis_report"},
      {"tool_version", kVersion},
      {"input", input.string()},
      {"sample_count", series.size()},
      {"sample_rate", series.sample_rate},
      {"preprocessing", {{"emd", options.preprocess.emd}, {"drop", options.preprocess.emd ? options.preprocess.drop : 0}}},
      {"config",
       {{"s_min", options.config.s_min},
        {"s_max", options.config.s_max},
        {"order", options.config.order},
        {"q", options.config.q},
        {"bidirectional", options.config.bidirectional}}},
      {"estimate",
       {{"h", e.h},
        {"intercept", e.intercept},
        {"r_squared", e.r_squared},
        {"q", e.q},
        {"scales_used", e.scales_used},
        {"dropped_points", e.dropped_points}}},
      {"dropped_scales", a.curve.dropped_scales},
      {"correlation", std::string(dfa::to_string(dfa::classify_correlation(e.h, options.band)))},
      {"correlation_band", options.band},
      {"fractal_dimension", dfa::fractal_dimension(e.h)},
      {"curve", curve},
  };
  return a;
}

namespace {

struct Entry {
  fs::path path;
  std::string emotion;
  std::string language;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::string slug(const std::string& s) {
  std::string out;
  for (unsigned char c : s) out.push_back(std::isalnum(c) || c == '-' ? char(c) : '_');
  return out.empty() ? "unlabeled" : out;
}

// Directory: every .wav/.txt file, sorted by path. Otherwise a manifest with one
// "path,emotion,language" line per file; header line optional.
std::vector<Entry> collect_inputs(const fs::path& source, const std::string& emotion, const std::string& language) {
  std::vector<Entry> out;
  if (fs::is_directory(source)) {
    for (const auto& de : fs::directory_iterator(source)) {
      if (!de.is_regular_file()) continue;
      const auto ext = lower(de.path().extension().string());
      if (ext == ".wav" || ext == ".txt") out.push_back({de.path(), emotion, language});
    }
  } else {
    std::ifstream in(source);
    if (!in) throw Error(ErrorKind::Io, "cannot open corpus source " + source.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      line = trim(line);
      if (line.empty() || line.front() == '#') continue;
      std::vector<std::string> fields;
      std::stringstream ss(line);
      for (std::string f; std::getline(ss, f, ',');) fields.push_back(trim(f));
      if (lineno == 1 && !fields.empty() && lower(fields[0]) == "path") continue;
      if (fields.empty() || fields[0].empty())
        throw Error(ErrorKind::Format, source.string() + ":" + std::to_string(lineno) + ": missing path");
      fs::path p = fields[0];
      if (p.is_relative()) p = source.parent_path() / p;
      out.push_back({p, fields.size() > 1 && !fields[1].empty() ? fields[1] : emotion,
                     fields.size() > 2 && !fields[2].empty() ? fields[2] : language});
    }
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.path < b.path; });
  if (out.empty()) throw Error(ErrorKind::Data, "no input files found in " + source.string());
  return out;
}

struct FileResult {
  std::optional<Analysis> analysis;
  std::string error;
};

std::vector<FileResult> analyze_all(const std::vector<Entry>& entries, const AnalysisOptions& options, unsigned threads) {
  std::vector<FileResult> results(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        results[i].analysis = analyze_file(entries[i].path, options);
      } catch (const std::exception& e) {
        results[i].error = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, unsigned(entries.size())));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  return results;
}

void add_analysis_flags(CLI::App* cmd, AnalysisOptions& o) {
  cmd->add_flag("--emd", o.preprocess.emd, "Denoise with empirical mode decomposition before DFA");
  cmd->add_option("--drop", o.preprocess.drop, "Number of leading IMFs removed by --emd")->capture_default_str();
  cmd->add_option("--q", o.config.q, "Fluctuation-function moment q (q != 0)")->capture_default_str();
  cmd->add_option("--smin", o.config.s_min, "Smallest segment length")->capture_default_str();
  cmd->add_option("--smax", o.config.s_max, "Largest segment length")->capture_default_str();
  cmd->add_option("--order", o.config.order, "Detrending polynomial order")->capture_default_str();
  cmd->add_flag("--bidirectional", o.config.bidirectional, "Also segment from the end of the series");
  cmd->add_option("--band", o.band, "Half-width of the 'uncorrelated' band around h = 0.5")->capture_default_str();
}

std::string curve_csv(const dfa::FluctuationCurve& curve) {
  std::ostringstream out;
  out.precision(17);
  out << "s,F\n";
  for (const auto& p : curve.points) out << p.scale << ',' << p.fluctuation << '\n';
  return out.str();
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  const std::string body = doc.dump(2) + "\n";
  if (path.empty() || path == "-") out << body;
  else persist::write_file(path, body);
}

std::vector<std::pair<double, double>> read_histogram_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::pair<double, double>> bins;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || (lineno == 1 && !line.empty() && std::isalpha(static_cast<unsigned char>(line[0])))) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t used = 0;
      const double c = std::stod(line.substr(0, comma), &used);
      const double n = std::stod(line.substr(comma + 1));
      bins.emplace_back(c, n);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Format, path.string() + ":" + std::to_string(lineno) + ": expected 'bin_center,count'");
    }
  }
  return bins;
}

// --- subcommands ---------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  std::string output;
  std::string curve_csv;
  AnalysisOptions options;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto result = analyze_file(a.input, a.options);
  if (!a.curve_csv.empty()) persist::write_file(a.curve_csv, curve_csv(result.curve));
  emit(result.report, a.output, out);
  return kOk;
}

struct CorpusArgs {
  std::string source;
  std::string out_dir;
  std::string emotion = "unlabeled";
  std::string language = "unknown";
  std::string created_at;
  unsigned threads = 0;
  double bin_width = 0.0;
  std::size_t min_corpus = 10;
  AnalysisOptions options;
};

int cmd_corpus(const CorpusArgs& a, std::ostream& out, std::ostream& err) {
  const auto entries = collect_inputs(a.source, a.emotion, a.language);
  const auto results = analyze_all(entries, a.options, thread_count(a.threads));

  const fs::path dir = a.out_dir;
  fs::create_directories(dir / "reports");
  const std::string created_at = a.created_at.empty() ? persist::utc_timestamp() : a.created_at;

  std::map<std::pair<std::string, std::string>, std::vector<double>> groups;
  json failed = json::array();
  std::size_t ok = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& r = results[i];
    if (!r.analysis) {
      err << json{{"warning", {{"file", entries[i].path.string()}, {"message", r.error}}}}.dump() << '\n';
      failed.push_back({{"file", entries[i].path.string()}, {"error", r.error}});
      continue;
    }
    ++ok;
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%05zu_", i);
    persist::write_file(dir / "reports" / (prefix + entries[i].path.stem().string() + ".json"),
                        r.analysis->report.dump(2) + "\n");
    groups[{entries[i].emotion, entries[i].language}].push_back(r.analysis->estimate.h);
  }
  if (ok < 2)
    throw Error(ErrorKind::Data, "corpus needs at least 2 analyzable files, got " + std::to_string(ok));

  corpus::BaselineOptions bopts;
  bopts.min_corpus = a.min_corpus;
  if (a.bin_width > 0.0) bopts.bin_width = a.bin_width;

  json summary_groups = json::array();
  for (const auto& [key, hs] : groups) {
    const std::string stem = slug(key.first) + "_" + slug(key.second);
    if (hs.size() < 2) {
      err << json{{"warning", {{"group", stem}, {"message", "fewer than 2 estimates; no baseline"}}}}.dump() << '\n';
      continue;
    }
    const auto baseline = corpus::build_baseline(hs, key.first, key.second, bopts);
    for (const auto& w : baseline.warnings) err << json{{"warning", {{"group", stem}, {"message", w}}}}.dump() << '\n';
    const auto hist = corpus::histogram(hs, bopts.bin_width);
    const std::string baseline_file = "baseline_" + stem + ".json";
    const std::string histogram_file = "histogram_" + stem + ".csv";
    persist::write_file(dir / baseline_file, persist::to_json(baseline, created_at).dump(2) + "\n");
    persist::write_file(dir / histogram_file, persist::histogram_csv(hist));
    summary_groups.push_back({{"emotion", baseline.emotion},
                              {"language", baseline.language},
                              {"n", baseline.n},
                              {"modal_h", baseline.modal_h},
                              {"h_low", baseline.h_low},
                              {"h_high", baseline.h_high},
                              {"bin_width", baseline.bin_width},
                              {"correlation", std::string(dfa::to_string(dfa::classify_correlation(baseline.modal_h, a.options.band)))},
                              {"baseline_file", baseline_file},
                              {"histogram_file", histogram_file}});
  }
  if (summary_groups.empty()) throw Error(ErrorKind::Data, "no group has enough estimates for a baseline");

  const json summary = {{"schema_version", persist::kSchemaVersion},
                        {"kind", "corpus_summary"},
                        {"files_ok", ok},
                        {"files_failed", failed},
                        {"groups", summary_groups}};
  persist::write_file(dir / "summary.json", summary.dump(2) + "\n");
  out << summary.dump(2) << '\n';
  return kOk;
}

struct ControlsArgs {
  std::string normal;
  std::string diseased;
  std::string output;
  std::string delta_rule = "half-support";
  double k = 1.0;
  double bin_width = 0.0;
  std::size_t min_corpus = 10;
  unsigned threads = 0;
  screening::SeverityConfig severity;
  AnalysisOptions options;
};

int cmd_controls(const ControlsArgs& a, std::ostream& out, std::ostream& err) {
  a.severity.validate();
  auto estimates = [&](const std::string& src) {
    const auto entries = collect_inputs(src, "", "");
    const auto results = analyze_all(entries, a.options, thread_count(a.threads));
    std::vector<dfa::HurstEstimate> hs;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (results[i].analysis) hs.push_back(results[i].analysis->estimate);
      else err << json{{"warning", {{"file", entries[i].path.string()}, {"message", results[i].error}}}}.dump() << '\n';
    }
    return hs;
  };
  screening::ControlOptions copts;
  copts.min_corpus = a.min_corpus;
  copts.k = a.k;
  if (a.delta_rule == "std") copts.delta_rule = screening::DeltaRule::StdDev;
  else if (a.delta_rule != "half-support") throw Error(ErrorKind::Config, "--delta-rule must be half-support or std");
  if (a.bin_width > 0.0) copts.bin_width = a.bin_width;

  const auto pair = screening::build_control_elements(estimates(a.normal), estimates(a.diseased), copts);
  emit(persist::to_json(persist::ControlDocument{pair.normal, pair.diseased, a.severity}), a.output, out);
  return kOk;
}

struct ClassifyArgs {
  std::string input;
  std::string baselines;
  std::string controls;
  std::string history;
  std::string subject;
  std::optional<std::int64_t> timestamp;
  std::string output;
  AnalysisOptions options;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  if (a.baselines.empty() && a.controls.empty())
    throw Error(ErrorKind::Config, "classify needs --baselines and/or --controls");
  if (!a.history.empty() && a.controls.empty()) throw Error(ErrorKind::Config, "--history requires --controls");
  if (!a.history.empty() && !a.timestamp) throw Error(ErrorKind::Config, "--history requires --timestamp");

  std::vector<corpus::EmotionBaseline> baselines;
  if (!a.baselines.empty()) baselines = persist::baselines_from_json(persist::read_json(a.baselines));
  std::optional<persist::ControlDocument> controls;
  if (!a.controls.empty()) controls = persist::controls_from_json(persist::read_json(a.controls));

  const auto analysis = analyze_file(a.input, a.options);
  const double h = analysis.estimate.h;
  json doc = {{"schema_version", persist::kSchemaVersion},
              {"kind", "classification"},
              {"input", a.input},
              {"h", h},
              {"r_squared", analysis.estimate.r_squared},
              {"correlation", std::string(dfa::to_string(dfa::classify_correlation(h, a.options.band)))}};
  if (!baselines.empty()) doc["emotion"] = screening::classify_emotion(h, baselines);
  if (controls) {
    doc["severity"] = std::string(screening::to_string(screening::severity(h, controls->normal, controls->diseased, controls->severity)));
    if (!a.history.empty()) {
      screening::MonitorHistory history;
      if (fs::exists(a.history)) history = persist::monitor_from_json(persist::read_json(a.history));
      if (!a.subject.empty()) history.subject = a.subject;
      const auto upd = screening::monitor_update(history, *a.timestamp, h, controls->normal, controls->diseased,
                                                 controls->severity);
      persist::write_file(a.history, persist::to_json(upd.history).dump(2) + "\n");
      doc["alarm"] = upd.alarm;
      doc["observations"] = upd.history.observations.size();
    }
  }
  emit(doc, a.output, out);
  return kOk;
}

struct SynthArgs {
  std::string kind;
  synth::GeneratorSpec spec;
  std::string output;
  std::string format;  // "", "text", "wav"
  std::uint32_t wav_rate = 16000;
};

int cmd_synth(SynthArgs a, std::ostream& out) {
  static const std::map<std::string, synth::Kind> kinds = {{"white", synth::Kind::WhiteNoise},
                                                           {"fgn", synth::Kind::Fgn},
                                                           {"sine", synth::Kind::Sine},
                                                           {"walk", synth::Kind::RandomWalk}};
  const auto it = kinds.find(a.kind);
  if (it == kinds.end()) throw Error(ErrorKind::Config, "unknown generator '" + a.kind + "'");
  a.spec.kind = it->second;
  if (a.spec.kind != synth::Kind::Sine && a.spec.n == 0) throw Error(ErrorKind::Config, "--n is required");
  SignalSeries s = synth::generate(a.spec);

  std::string format = a.format;
  if (format.empty()) format = lower(fs::path(a.output).extension().string()) == ".wav" ? "wav" : "text";
  if (format == "wav") {
    if (a.output.empty() || a.output == "-") throw Error(ErrorKind::Config, "WAV output needs -o <file>");
    if (s.sample_rate == 0) s.sample_rate = a.wav_rate;
    write_wav(s, a.output, WavEncoding::Float32);
  } else if (format == "text") {
    if (a.output.empty() || a.output == "-") out << to_text(s);
    else write_text(s, a.output);
  } else {
    throw Error(ErrorKind::Config, "--format must be text or wav");
  }
  return kOk;
}

struct PlotArgs {
  std::string input;
  std::string output;
};

int cmd_plot(const PlotArgs& a, std::ostream& out) {
  const fs::path in = a.input;
  std::string svg;
  if (lower(in.extension().string()) == ".json") {
    svg = render_curve_svg(persist::read_json(in));
  } else {
    svg = render_histogram_svg(read_histogram_csv(in));
  }
  const std::string target = a.output.empty() ? fs::path(in).replace_extension(".svg").string() : a.output;
  if (target == "-") out << svg;
  else persist::write_file(target, svg);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hurstlab: Hurst exponents of audio and time series by detrended fluctuation analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Estimate h(q) of one .wav or text file and print a JSON report");
  c_analyze->add_option("input", analyze.input, "Input .wav (multi-channel input is averaged to mono) or text file")
      ->required();
  c_analyze->add_option("-o,--output", analyze.output, "Write the report here instead of stdout");
  c_analyze->add_option("--curve-csv", analyze.curve_csv, "Also write the fluctuation curve as 's,F' CSV");
  add_analysis_flags(c_analyze, analyze.options);

  CorpusArgs corpus_args;
  auto* c_corpus = app.add_subcommand("corpus", "Analyze a corpus and build per-emotion histograms and baselines");
  c_corpus->add_option("source", corpus_args.source, "Directory of .wav/.txt files, or a path,emotion,language manifest")
      ->required();
  c_corpus->add_option("--out-dir", corpus_args.out_dir, "Directory for reports, histograms and baselines")->required();
  c_corpus->add_option("--emotion", corpus_args.emotion, "Emotion label for directory input")->capture_default_str();
  c_corpus->add_option("--language", corpus_args.language, "Language label for directory input")->capture_default_str();
  c_corpus->add_option("--threads", corpus_args.threads, "Worker threads (0 = all cores; capped by HURSTLAB_THREADS)");
  c_corpus->add_option("--bin-width", corpus_args.bin_width, "Histogram bin width (default: Freedman-Diaconis)");
  c_corpus->add_option("--min-corpus", corpus_args.min_corpus, "Warn when a group has fewer estimates")
      ->capture_default_str();
  c_corpus->add_option("--created-at", corpus_args.created_at, "Timestamp recorded in baselines (default: now)");
  add_analysis_flags(c_corpus, corpus_args.options);

  ControlsArgs controls;
  auto* c_controls = app.add_subcommand("controls", "Build normal/diseased control elements from two corpora");
  c_controls->add_option("--normal", controls.normal, "Normal-population corpus (directory or manifest)")->required();
  c_controls->add_option("--diseased", controls.diseased, "Diseased-population corpus (directory or manifest)")->required();
  c_controls->add_option("-o,--output", controls.output, "Write control elements here instead of stdout");
  c_controls->add_option("--delta-rule", controls.delta_rule, "half-support or std")->capture_default_str();
  c_controls->add_option("--k", controls.k, "Standard-deviation multiplier for --delta-rule std")->capture_default_str();
  c_controls->add_option("--bin-width", controls.bin_width, "Histogram bin width (default: Freedman-Diaconis)");
  c_controls->add_option("--min-corpus", controls.min_corpus, "Minimum estimates per corpus")->capture_default_str();
  c_controls->add_option("--threads", controls.threads, "Worker threads (0 = all cores; capped by HURSTLAB_THREADS)");
  c_controls->add_option("--k1", controls.severity.k1, "Normal band multiplier")->capture_default_str();
  c_controls->add_option("--approach", controls.severity.approach_fraction,
                         "Fraction of the center gap counted as approaching onset")
      ->capture_default_str();
  c_controls->add_option("--alarm-threshold", controls.severity.alarm_threshold,
                         "Consecutive flagged observations that raise an alarm")
      ->capture_default_str();
  add_analysis_flags(c_controls, controls.options);

  ClassifyArgs classify;
  std::int64_t timestamp = 0;
  auto* c_classify = app.add_subcommand("classify", "Tag an input by emotion baselines and/or screening severity");
  c_classify->add_option("input", classify.input, "Input .wav or text file")->required();
  c_classify->add_option("--baselines", classify.baselines, "Baseline JSON (object, array or {baselines: [...]})");
  c_classify->add_option("--controls", classify.controls, "Control-element JSON from 'controls'");
  c_classify->add_option("--history", classify.history, "Monitor history JSON, updated in place");
  c_classify->add_option("--subject", classify.subject, "Subject id stored in a new history");
  auto* ts_opt = c_classify->add_option("--timestamp", timestamp, "Observation time (integer, e.g. epoch seconds)");
  c_classify->add_option("-o,--output", classify.output, "Write the classification here instead of stdout");
  add_analysis_flags(c_classify, classify.options);

  SynthArgs synth_args;
  auto* c_synth = app.add_subcommand("synth", "Generate a synthetic series (white, fgn, sine, walk)");
  c_synth->add_option("kind", synth_args.kind, "white | fgn | sine | walk")->required();
  c_synth->add_option("--n", synth_args.spec.n, "Number of samples");
  c_synth->add_option("--seed", synth_args.spec.seed, "PRNG seed (mt19937_64)")->capture_default_str();
  c_synth->add_option("--hurst", synth_args.spec.hurst, "Hurst exponent for fgn, in (0, 1)")->capture_default_str();
  c_synth->add_option("--freq", synth_args.spec.freq, "Sine frequency in Hz")->capture_default_str();
  c_synth->add_option("--rate", synth_args.spec.rate, "Sine sample rate in Hz")->capture_default_str();
  c_synth->add_option("--amplitude", synth_args.spec.amplitude, "Sine amplitude")->capture_default_str();
  c_synth->add_option("--wav-rate", synth_args.wav_rate, "Sample rate written to WAV headers of noise series")
      ->capture_default_str();
  c_synth->add_option("--format", synth_args.format, "text or wav (default: from the output extension)");
  c_synth->add_option("-o,--output", synth_args.output, "Output file (default: text on stdout)");

  PlotArgs plot;
  auto* c_plot = app.add_subcommand("plot", "Render a report (log-log curve) or histogram CSV as SVG");
  c_plot->add_option("input", plot.input, "Analysis report .json or histogram .csv")->required();
  c_plot->add_option("-o,--output", plot.output, "SVG path ('-' for stdout; default: input with .svg)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c_analyze) return cmd_analyze(analyze, out);
    if (*c_corpus) return cmd_corpus(corpus_args, out, err);
    if (*c_controls) return cmd_controls(controls, out, err);
    if (*c_classify) {
      if (*ts_opt) classify.timestamp = timestamp;
      return cmd_classify(classify, out);
    }
    if (*c_synth) return cmd_synth(synth_args, out);
    if (*c_plot) return cmd_plot(plot, out);
  } catch (const Error& e) {
    err << json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}}.dump() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace hurstlab::cli
