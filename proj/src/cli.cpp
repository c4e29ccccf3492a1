#include "docbin/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "docbin/image_io.hpp"
#include "docbin/metrics.hpp"

namespace docbin {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw std::invalid_argument(key + ": " + why);
}

double parse_double(const std::string& key, const std::string& value) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    bad_key(key, "expected a number, got '" + value + "'");
  }
  if (pos != value.size()) bad_key(key, "expected a number, got '" + value + "'");
  return v;
}

long parse_int(const std::string& key, const std::string& value) {
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    bad_key(key, "expected an integer, got '" + value + "'");
  }
  if (pos != value.size()) bad_key(key, "expected an integer, got '" + value + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

// Min-max rescale into [0,1] for trace snapshots; flat fields map to 0.
GrayImage rescaled(const Field& f) {
  const double lo = f.min();
  const double hi = f.max();
  Field out(f.width(), f.height());
  if (hi - lo > 0.0) {
    for (size_t i = 0; i < f.data().size(); ++i) out.data()[i] = (f.data()[i] - lo) / (hi - lo);
  }
  return GrayImage(std::move(out));
}

struct BinarizeOutcome {
  std::string input;
  int iterations = 0;
  double seconds = 0.0;
  std::string error;  // empty on success
};

BinarizeOutcome binarize_one(const RunConfig& cfg, const std::string& input) {
  BinarizeOutcome r;
  r.input = input;
  try {
    const GrayImage img = load_gray(input);
    const std::string stem = (fs::path(cfg.out_dir) / stem_of(input)).string();
    std::ofstream sidecar;
    TraceSink sink;
    if (cfg.trace_interval > 0) {
      sidecar.open(stem + ".trace.txt");
      sink = [&](int n, const Field& b, const Field& u) {
        save_gray(stem + ".b." + std::to_string(n) + ".pgm", rescaled(b));
        save_gray(stem + ".u." + std::to_string(n) + ".pgm", rescaled(u));
        char line[256];
        std::snprintf(line, sizeof(line), "n=%d b=[%.17g,%.17g] u=[%.17g,%.17g]\n",
                      n, b.min(), b.max(), u.min(), u.max());
        sidecar << line;
      };
    }
    const auto start = std::chrono::steady_clock::now();
    const EvolveResult res = evolve(img, cfg.params, sink, cfg.trace_interval);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.iterations = res.iterations;
    save_binary(stem + ".bin.pgm", binarize(res.u));
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

struct EvalRow {
  std::string file;
  MetricsReport report;
  std::string error;
};

std::vector<std::pair<std::string, std::string>> pair_up(const RunConfig& cfg) {
  for (const auto& input : cfg.inputs) {
    if (!fs::exists(input)) throw std::runtime_error(input + ": no such file");
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  if (cfg.ground_truth.empty()) {
    if (cfg.inputs.empty() || cfg.inputs.size() % 2 != 0) {
      throw std::invalid_argument("evaluate: without a ground-truth path, arguments must come as BIN GT pairs");
    }
    for (size_t i = 0; i < cfg.inputs.size(); i += 2) pairs.emplace_back(cfg.inputs[i], cfg.inputs[i + 1]);
    return pairs;
  }
  if (fs::is_directory(cfg.ground_truth)) {
    for (const auto& input : cfg.inputs) {
      const std::string stem = stem_of(input);
      std::string found;
      for (const char* ext : {".pgm", ".png"}) {
        const fs::path cand = fs::path(cfg.ground_truth) / (stem + ext);
        if (fs::exists(cand)) { found = cand.string(); break; }
      }
      if (found.empty()) throw std::runtime_error("evaluate: no ground truth for '" + input + "' in " + cfg.ground_truth);
      pairs.emplace_back(input, found);
    }
    return pairs;
  }
  if (cfg.inputs.size() != 1) {
    throw std::invalid_argument("evaluate: a single ground-truth file needs exactly one input");
  }
  pairs.emplace_back(cfg.inputs[0], cfg.ground_truth);
  return pairs;
}

std::string csv_report(const std::vector<EvalRow>& rows) {
  std::ostringstream out;
  out << "file,fm,fps,psnr,drd,tp,fp,fn,tn,iterations,seconds\n";
  MetricsReport avg;
  int ok = 0;
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      out << row.file << ",nan,nan,nan,nan,0,0,0,0,0,0\n";
      continue;
    }
    out << row.file << "," << metrics_csv_fragment(row.report) << ",0,0\n";
    avg.fm += row.report.fm;
    avg.fps += row.report.fps;
    avg.psnr += row.report.psnr;
    avg.drd += row.report.drd;
    avg.tp += row.report.tp;
    avg.fp += row.report.fp;
    avg.fn += row.report.fn;
    avg.tn += row.report.tn;
    ++ok;
  }
  if (ok > 0) {
    char buf[200];
    std::snprintf(buf, sizeof(buf), "average,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,0,0\n",
                  avg.fm / ok, avg.fps / ok, avg.psnr / ok, avg.drd / ok,
                  static_cast<double>(avg.tp) / ok, static_cast<double>(avg.fp) / ok,
                  static_cast<double>(avg.fn) / ok, static_cast<double>(avg.tn) / ok);
    out << buf;
  }
  return out.str();
}

nlohmann::ordered_json json_entry(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["fm"] = r.fm;
  j["fps"] = r.fps;
  j["psnr"] = r.psnr;
  j["drd"] = r.drd;
  j["tp"] = r.tp;
  j["fp"] = r.fp;
  j["fn"] = r.fn;
  j["tn"] = r.tn;
  return j;
}

std::string json_report(const std::vector<EvalRow>& rows) {
  nlohmann::ordered_json root;
  root["files"] = nlohmann::ordered_json::array();
  MetricsReport avg;
  int ok = 0;
  for (const auto& row : rows) {
    nlohmann::ordered_json entry;
    entry["file"] = row.file;
    if (!row.error.empty()) {
      entry["error"] = row.error;
    } else {
      entry.update(json_entry(row.report));
      avg.fm += row.report.fm;
      avg.fps += row.report.fps;
      avg.psnr += row.report.psnr;
      avg.drd += row.report.drd;
      avg.tp += row.report.tp;
      avg.fp += row.report.fp;
      avg.fn += row.report.fn;
      avg.tn += row.report.tn;
      ++ok;
    }
    root["files"].push_back(std::move(entry));
  }
  if (ok > 0) {
    nlohmann::ordered_json j;
    j["fm"] = avg.fm / ok;
    j["fps"] = avg.fps / ok;
    j["psnr"] = avg.psnr / ok;
    j["drd"] = avg.drd / ok;
    j["tp"] = static_cast<double>(avg.tp) / ok;
    j["fp"] = static_cast<double>(avg.fp) / ok;
    j["fn"] = static_cast<double>(avg.fn) / ok;
    j["tn"] = static_cast<double>(avg.tn) / ok;
    root["average"] = std::move(j);
  }
  return root.dump(2) + "\n";
}

}  // namespace

DegradationSpec SynthConfig::to_spec() const {
  DegradationSpec spec;
  spec.base_text = glyph_bar_chart(width, height, stroke_width, bars);
  if (background == "constant") {
    spec.background = ConstantBackground{bg_level};
  } else if (background == "ramp") {
    RampBackground r;
    r.low = bg_low;
    r.high = bg_high;
    if (bg_direction == "horizontal") r.direction = RampDirection::horizontal;
    else if (bg_direction == "vertical") r.direction = RampDirection::vertical;
    else bad_key("bg_direction", "expected horizontal or vertical, got '" + bg_direction + "'");
    spec.background = r;
  } else if (background == "blob") {
    BlobStainBackground b;
    b.base = bg_base;
    b.center_row = stain_row;
    b.center_col = stain_col;
    b.radius = stain_radius;
    b.depth = stain_depth;
    spec.background = b;
  } else {
    bad_key("background", "expected constant, ramp or blob, got '" + background + "'");
  }
  spec.text_level = text_level;
  spec.noise_sigma = noise_sigma;
  spec.seed = static_cast<std::uint32_t>(seed);
  return spec;
}

void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  SolverParams& p = cfg.params;
  SynthConfig& sy = cfg.synth;
  auto positive = [&](double v) { if (!(v > 0.0)) bad_key(key, "must be positive"); return v; };
  auto nonneg = [&](double v) { if (v < 0.0) bad_key(key, "must be nonnegative"); return v; };
  auto open01 = [&](double v) { if (!(v > 0.0 && v < 1.0)) bad_key(key, "must lie strictly inside (0,1)"); return v; };

  if (key == "model") {
    if (value == "proposed") p.model = Model::proposed;
    else if (value == "dh") p.model = Model::dh;
    else bad_key(key, "expected proposed or dh, got '" + value + "'");
  } else if (key == "a11") p.a11 = nonneg(parse_double(key, value));
  else if (key == "a12") p.a12 = nonneg(parse_double(key, value));
  else if (key == "a21") p.a21 = nonneg(parse_double(key, value));
  else if (key == "a22") p.a22 = nonneg(parse_double(key, value));
  else if (key == "a23") p.a23 = open01(parse_double(key, value));
  else if (key == "a24") p.a24 = nonneg(parse_double(key, value));
  else if (key == "lambda11") p.lambda11 = nonneg(parse_double(key, value));
  else if (key == "lambda12") p.lambda12 = nonneg(parse_double(key, value));
  else if (key == "lambda21") p.lambda21 = nonneg(parse_double(key, value));
  else if (key == "lambda22") p.lambda22 = nonneg(parse_double(key, value));
  else if (key == "lambda23") p.lambda23 = open01(parse_double(key, value));
  else if (key == "rho") p.rho = positive(parse_double(key, value));
  else if (key == "r") {
    p.r = static_cast<int>(parse_int(key, value));
    if (p.r < 1) bad_key(key, "must be at least 1");
  } else if (key == "epsilon") p.epsilon = positive(parse_double(key, value));
  else if (key == "alpha") {
    p.alpha = parse_double(key, value);
    if (!(p.alpha > 0.0 && p.alpha <= 2.0)) bad_key(key, "must be in (0,2]");
  } else if (key == "tau") p.tau = positive(parse_double(key, value));
  else if (key == "K") {
    p.K = static_cast<int>(parse_int(key, value));
    if (p.K < 1) bad_key(key, "must be at least 1");
  } else if (key == "max_iters") {
    p.max_iters = static_cast<int>(parse_int(key, value));
    if (p.max_iters < 0) bad_key(key, "must be nonnegative");
  } else if (key == "rel_tol") p.rel_tol = nonneg(parse_double(key, value));
  else if (key == "out") cfg.out_dir = value;
  else if (key == "trace") {
    cfg.trace_interval = static_cast<int>(parse_int(key, value));
    if (cfg.trace_interval < 0) bad_key(key, "must be nonnegative");
  } else if (key == "report") {
    if (value == "csv") cfg.report = ReportFormat::csv;
    else if (value == "json") cfg.report = ReportFormat::json;
    else bad_key(key, "expected csv or json, got '" + value + "'");
  } else if (key == "jobs") {
    cfg.jobs = static_cast<int>(parse_int(key, value));
    if (cfg.jobs < 0) bad_key(key, "must be nonnegative");
  } else if (key == "name") sy.name = value;
  else if (key == "width") {
    sy.width = static_cast<int>(parse_int(key, value));
    if (sy.width < 3) bad_key(key, "must be at least 3");
  } else if (key == "height") {
    sy.height = static_cast<int>(parse_int(key, value));
    if (sy.height < 3) bad_key(key, "must be at least 3");
  } else if (key == "bars") {
    sy.bars = static_cast<int>(parse_int(key, value));
    if (sy.bars < 0) bad_key(key, "must be nonnegative");
  } else if (key == "stroke_width") {
    sy.stroke_width = static_cast<int>(parse_int(key, value));
    if (sy.stroke_width < 1) bad_key(key, "must be at least 1");
  } else if (key == "background") sy.background = value;
  else if (key == "bg_level") sy.bg_level = parse_double(key, value);
  else if (key == "bg_low") sy.bg_low = parse_double(key, value);
  else if (key == "bg_high") sy.bg_high = parse_double(key, value);
  else if (key == "bg_direction") sy.bg_direction = value;
  else if (key == "bg_base") sy.bg_base = parse_double(key, value);
  else if (key == "stain_row") sy.stain_row = parse_double(key, value);
  else if (key == "stain_col") sy.stain_col = parse_double(key, value);
  else if (key == "stain_radius") sy.stain_radius = positive(parse_double(key, value));
  else if (key == "stain_depth") sy.stain_depth = parse_double(key, value);
  else if (key == "text_level") sy.text_level = parse_double(key, value);
  else if (key == "noise_sigma") sy.noise_sigma = nonneg(parse_double(key, value));
  else if (key == "seed") sy.seed = static_cast<unsigned long>(parse_int(key, value));
  else bad_key(key, "unknown configuration key");
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config file");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
    try {
      apply_key_value(cfg, key, value);
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

int cmd_binarize(const RunConfig& cfg) {
  if (cfg.inputs.empty()) {
    std::cerr << "binarize: no input images\n";
    return 1;
  }
  // Reject missing paths before spending any compute.
  bool missing = false;
  for (const auto& input : cfg.inputs) {
    if (!fs::exists(input)) {
      std::cerr << input << ": no such file\n";
      missing = true;
    }
  }
  if (missing) return 1;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);

  const size_t n = cfg.inputs.size();
  std::vector<BinarizeOutcome> results(n);
  unsigned workers = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs) : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n));

  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      results[i] = binarize_one(cfg, cfg.inputs[i]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  int failures = 0;
  for (const auto& r : results) {
    if (r.error.empty()) {
      std::printf("%s: %d iterations, %.3f s\n", r.input.c_str(), r.iterations, r.seconds);
    } else {
      std::cerr << r.input << ": " << r.error << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}

int cmd_evaluate(const RunConfig& cfg) {
  std::vector<EvalRow> rows;
  try {
    const auto pairs = pair_up(cfg);
    for (const auto& [bin_path, gt_path] : pairs) {
      EvalRow row;
      row.file = bin_path;
      try {
        const BinaryImage bin = to_binary(load_gray(bin_path));
        const BinaryImage gt = to_binary(load_gray(gt_path));
        row.report = evaluate_pair(bin, gt);
      } catch (const std::exception& e) {
        row.error = e.what();
        std::cerr << bin_path << ": " << e.what() << "\n";
      }
      rows.push_back(std::move(row));
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  const std::string body = cfg.report == ReportFormat::csv ? csv_report(rows) : json_report(rows);
  std::fputs(body.c_str(), stdout);
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  const std::string out_path = (fs::path(cfg.out_dir) / (cfg.report == ReportFormat::csv ? "report.csv" : "report.json")).string();
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << out_path << ": cannot write report\n";
    return 1;
  }
  out << body;

  for (const auto& row : rows) {
    if (!row.error.empty()) return 1;
  }
  return 0;
}

int cmd_synth(const RunConfig& cfg) {
  try {
    const DegradationSpec spec = cfg.synth.to_spec();
    auto [gray, gt] = render(spec);
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    const std::string stem = (fs::path(cfg.out_dir) / cfg.synth.name).string();
    save_gray(stem + ".gray.pgm", gray);
    save_binary(stem + ".gt.pgm", gt);
    std::printf("%s.gray.pgm and %s.gt.pgm written (%dx%d)\n", stem.c_str(), stem.c_str(), gray.width(), gray.height());
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "synth: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace docbin
