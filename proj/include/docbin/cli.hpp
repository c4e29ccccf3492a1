#pragma once

#include <string>
#include <vector>

#include "docbin/solver.hpp"
#include "docbin/synthgen.hpp"

namespace docbin {

enum class ReportFormat { csv, json };

// How the synth command builds its page. Mirrors DegradationSpec but in
// plain scalars so it can travel through the flat config format.
struct SynthConfig {
  std::string name = "synth";
  int width = 128;
  int height = 128;
  int bars = 4;
  int stroke_width = 3;
  std::string background = "ramp";  // constant | ramp | blob
  double bg_level = 0.8;
  double bg_low = 0.5;
  double bg_high = 0.9;
  std::string bg_direction = "horizontal";  // horizontal | vertical
  double bg_base = 0.9;
  double stain_row = 0.0;
  double stain_col = 0.0;
  double stain_radius = 32.0;
  double stain_depth = 0.3;
  double text_level = 0.2;
  double noise_sigma = 0.0;
  unsigned long seed = 0;

  DegradationSpec to_spec() const;
};

struct RunConfig {
  SolverParams params;
  SynthConfig synth;
  std::vector<std::string> inputs;
  std::string ground_truth;  // file, or directory matched by stem
  std::string out_dir = ".";
  int trace_interval = 0;
  ReportFormat report = ReportFormat::csv;
  int jobs = 0;  // 0 = hardware concurrency
};

// Applies one `key = value` setting. Shared by the config file reader and
// the flag layer so both validate identically. Unknown keys and
// out-of-range values throw with the key named.
void apply_key_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat `key = value` file; blank lines and lines starting with # are
// skipped. Malformed lines and unknown keys are hard errors naming the
// line number.
void apply_config_file(RunConfig& cfg, const std::string& path);

// Commands return a process exit status. Diagnostics go to stderr.
int cmd_binarize(const RunConfig& cfg);
int cmd_evaluate(const RunConfig& cfg);
int cmd_synth(const RunConfig& cfg);

}  // namespace docbin
