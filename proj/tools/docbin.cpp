#include <CLI11.hpp>

#include <iostream>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "docbin/cli.hpp"

namespace {

// One --flag per configuration key. Values stay strings here so the flag
// layer and the config file validate through the same code path; flags win
// because they are applied after the file.
struct Key {
  const char* name;
  const char* help;
};

const Key kKeys[] = {
    {"model", "proposed (additive) or dh (multiplicative baseline)"},
    {"a11", "background diffusion strength"},
    {"a12", "background fidelity strength"},
    {"a21", "foreground edge-stopped diffusion strength"},
    {"a22", "foreground fidelity strength"},
    {"a23", "threshold- vs floor-forcing balance, in (0,1)"},
    {"a24", "weak-stroke (local max) forcing strength"},
    {"lambda11", "dh background diffusion strength"},
    {"lambda12", "dh background fidelity strength"},
    {"lambda21", "dh foreground diffusion strength"},
    {"lambda22", "dh foreground fidelity strength"},
    {"lambda23", "dh forcing balance, in (0,1)"},
    {"rho", "smoothing kernel radius, pixels"},
    {"r", "local-max window radius, pixels"},
    {"epsilon", "membership sharpness, intensity units"},
    {"alpha", "fractional gradient order, in (0,2]"},
    {"tau", "time step"},
    {"K", "fractional gradient tail truncation"},
    {"max_iters", "iteration budget"},
    {"rel_tol", "relative-change stopping tolerance"},
    {"out", "output directory"},
    {"trace", "write rescaled b/u snapshots every N iterations"},
    {"report", "evaluate report format: csv or json"},
    {"jobs", "worker threads, 0 = hardware concurrency"},
    {"name", "synth output stem"},
    {"width", "synth page width"},
    {"height", "synth page height"},
    {"bars", "synth glyph bar count"},
    {"stroke_width", "synth stroke thickness"},
    {"background", "synth background: constant, ramp, or blob"},
    {"bg_level", "constant background level"},
    {"bg_low", "ramp background low end"},
    {"bg_high", "ramp background high end"},
    {"bg_direction", "ramp direction: horizontal or vertical"},
    {"bg_base", "blob background base level"},
    {"stain_row", "blob stain center row"},
    {"stain_col", "blob stain center column"},
    {"stain_radius", "blob stain radius"},
    {"stain_depth", "blob stain depth"},
    {"text_level", "synth ink level, below every background level"},
    {"noise_sigma", "synth Gaussian noise level"},
    {"seed", "synth noise seed"},
};

struct SubcommandFlags {
  CLI::App* app = nullptr;
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> values;  // key -> raw value

  explicit SubcommandFlags(CLI::App* sub) : app(sub) {
    values.reserve(std::size(kKeys));
    for (const Key& key : kKeys) values.emplace_back(key.name, "");
    for (size_t i = 0; i < values.size(); ++i) {
      app->add_option("--" + values[i].first, values[i].second, kKeys[i].help);
    }
    app->add_option("--config", config_path, "flat key = value settings file");
  }

  // defaults -> config file -> explicit flags
  docbin::RunConfig resolve() const {
    docbin::RunConfig cfg;
    if (!config_path.empty()) docbin::apply_config_file(cfg, config_path);
    for (const auto& [key, storage] : values) {
      if (app->count("--" + key) > 0) docbin::apply_key_value(cfg, key, storage);
    }
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDE-driven document image binarization"};
  app.require_subcommand(1);

  CLI::App* bin = app.add_subcommand("binarize", "evolve and threshold input images");
  std::vector<std::string> bin_inputs;
  bin->add_option("inputs", bin_inputs, "grayscale images (PGM or PNG)")->required();
  SubcommandFlags bin_flags(bin);

  CLI::App* eval = app.add_subcommand("evaluate", "score binarized images against ground truth");
  std::vector<std::string> eval_inputs;
  std::string eval_gt;
  eval->add_option("inputs", eval_inputs, "binarized images, or BIN GT pairs when --gt is absent")->required();
  eval->add_option("--gt", eval_gt, "ground-truth file, or directory matched by file stem");
  SubcommandFlags eval_flags(eval);

  CLI::App* synth = app.add_subcommand("synth", "render a synthetic degraded page with ground truth");
  SubcommandFlags synth_flags(synth);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bin->parsed()) {
      docbin::RunConfig cfg = bin_flags.resolve();
      cfg.inputs = bin_inputs;
      return docbin::cmd_binarize(cfg);
    }
    if (eval->parsed()) {
      docbin::RunConfig cfg = eval_flags.resolve();
      cfg.inputs = eval_inputs;
      cfg.ground_truth = eval_gt;
      return docbin::cmd_evaluate(cfg);
    }
    docbin::RunConfig cfg = synth_flags.resolve();
    return docbin::cmd_synth(cfg);
  } catch (const std::exception& e) {
    std::cerr << "docbin: " << e.what() << "\n";
    return 1;
  }
}
