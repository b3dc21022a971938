#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfmm/dataset.hpp"
#include "gfmm/predict.hpp"
#include "gfmm/types.hpp"

namespace gfmm {

// What to train and score in an experiment cell. The two onln variants share
// the classic trainer and differ only in tie-breaking (random vs nearest
// centroid); iol uses the overlap-avoiding trainer with the cardinality
// vote; iol_ensemble is a committee of shuffled iol members.
enum class Algorithm { onln, onln_manhattan, iol, iol_ensemble };

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(const std::string& name);
TieStrategy default_tie_strategy(Algorithm a);

// The theta sweep used throughout: 0.1, 0.2, ..., 0.7.
std::vector<double> default_theta_grid();

// Full description of one experiment. A single master seed pins fold
// assignment, noise injection, presentation shuffles and random tie-breaks,
// so two runs of the same spec produce identical records (timings aside).
struct ExperimentSpec {
  std::string data_path;
  int label_column = kLabelColumnLast;
  bool has_header = true;

  std::vector<Algorithm> algorithms = {Algorithm::iol};
  std::vector<double> thetas = default_theta_grid();
  double gamma = 1.0;
  std::size_t folds = 4;

  // Fraction of training(+validation) samples whose label is flipped.
  double noise_fraction = 0.0;

  // With pruning on, each fold cycle uses two folds to train, one to prune
  // and one to test; off, training takes every fold but the test one.
  bool pruning = false;
  double prune_threshold = 0.5;

  // Training repetitions per fold. One repetition presents samples in file
  // order; several repetitions each use their own seeded shuffle.
  std::size_t repetitions = 1;

  std::size_t ensemble_members = 11;
  std::uint64_t master_seed = 0;

  // Overrides the per-algorithm default tie strategy when set.
  std::optional<TieStrategy> tie_override;
};

// One experiment cell: test error of one trained model.
struct MetricsRecord {
  Algorithm algorithm = Algorithm::iol;
  double theta = 0.0;
  std::size_t fold = 0;
  std::size_t rep = 0;
  std::uint64_t seed = 0;  // the cell's derived seed
  double noise = 0.0;
  bool pruned = false;
  double error_pct = 0.0;
  std::size_t boxes = 0;         // ensemble cells: summed over members
  double train_seconds = 0.0;    // wall time around training only
};

// Splits sample indices into k folds preserving class balance: within every
// class, fold counts differ by at most one. Assignment is a seeded shuffle
// per class dealt round-robin; each fold comes back sorted. Throws
// std::invalid_argument for k < 2 or k > labels.size().
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels,
                                                       std::size_t k,
                                                       std::uint64_t seed);

// Returns a copy of `data` with exactly round(fraction * N) distinct samples
// reassigned to a uniformly drawn different class (classes = distinct labels
// in `data`). fraction must lie in [0, 1); flipping requires at least two
// classes. Features are untouched.
std::vector<Pattern> inject_label_noise(std::span<const Pattern> data, double fraction,
                                        std::uint64_t seed);

// Runs the full cross product algorithms x thetas x folds x repetitions and
// returns one record per cell, in loop order. A failing cell is reported
// into `warnings` (when given) and skipped; the experiment continues.
std::vector<MetricsRecord> run_experiment(const ExperimentSpec& spec,
                                          std::vector<std::string>* warnings = nullptr);

// Same, over an already loaded dataset (spec.data_path ignored).
std::vector<MetricsRecord> run_experiment(const Dataset& ds, const ExperimentSpec& spec,
                                          std::vector<std::string>* warnings = nullptr);

// Mean/deviation rollup per (algorithm, theta), rows in first-appearance
// order of the records. Deviations are population deviations.
struct SummaryRow {
  Algorithm algorithm = Algorithm::iol;
  double theta = 0.0;
  std::size_t cells = 0;
  double mean_error_pct = 0.0;
  double std_error_pct = 0.0;
  double mean_boxes = 0.0;
  double mean_train_seconds = 0.0;
};
std::vector<SummaryRow> summarize(std::span<const MetricsRecord> records);

// Flat CSV with a `# gfmm-metrics ... master_seed=...` comment line on top.
// Identical records and seed produce identical bytes except the
// train_seconds column.
std::string metrics_to_csv(std::span<const MetricsRecord> records,
                           std::uint64_t master_seed);

// Human-readable table for terminal output.
std::string summary_to_text(std::span<const SummaryRow> rows);

}  // namespace gfmm
