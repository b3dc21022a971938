// gfmm command-line tool. Talks to the library exclusively through the
// public C API so it doubles as a living example of that surface.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gfmm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

int status_to_exit(gfmm_status s) {
  switch (s) {
    case GFMM_OK:
      return kExitOk;
    case GFMM_ERR_ARGUMENT:
      return kExitUsage;
    case GFMM_ERR_DATA:
    case GFMM_ERR_VERSION:
    case GFMM_ERR_UNSUPPORTED:
      return kExitData;
    default:
      return kExitInternal;
  }
}

// Prints the library's diagnostic and converts the status to an exit code.
int fail(gfmm_status s) {
  const char* message = gfmm_last_error();
  std::fprintf(stderr, "error: %s\n", message && *message ? message : "unknown failure");
  return status_to_exit(s);
}

struct DatasetDeleter {
  void operator()(gfmm_dataset* p) const { gfmm_dataset_free(p); }
};
struct ModelDeleter {
  void operator()(gfmm_model* p) const { gfmm_model_free(p); }
};
struct EnsembleDeleter {
  void operator()(gfmm_ensemble* p) const { gfmm_ensemble_free(p); }
};
using DatasetPtr = std::unique_ptr<gfmm_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<gfmm_model, ModelDeleter>;
using EnsemblePtr = std::unique_ptr<gfmm_ensemble, EnsembleDeleter>;

// Shared --data/--label-column/--no-header options.
struct DataOptions {
  std::string path;
  int label_column = GFMM_LABEL_COLUMN_LAST;
  bool no_header = false;
};

void add_data_options(CLI::App* cmd, DataOptions* opts, bool with_labels) {
  cmd->add_option("--data", opts->path, "input CSV file")->required();
  cmd->add_option("--label-column", opts->label_column,
                  with_labels ? "0-based label column (-1 = last column)"
                              : "0-based label column (-1 = last, -2 = none)");
  cmd->add_flag("--no-header", opts->no_header, "CSV has no header row");
  if (!with_labels) opts->label_column = GFMM_LABEL_COLUMN_NONE;
}

gfmm_status load_data(const DataOptions& opts, DatasetPtr* out) {
  gfmm_dataset* raw = nullptr;
  const gfmm_status s =
      gfmm_dataset_load_csv(opts.path.c_str(), opts.label_column, !opts.no_header, &raw);
  out->reset(raw);
  return s;
}

const std::vector<std::pair<std::string, gfmm_tie_strategy>>& tie_choices() {
  static const std::vector<std::pair<std::string, gfmm_tie_strategy>> choices = {
      {"cardinality", GFMM_TIE_CARDINALITY},
      {"manhattan", GFMM_TIE_MANHATTAN},
      {"random", GFMM_TIE_RANDOM},
  };
  return choices;
}

const char* tie_name(gfmm_tie_strategy tie) {
  for (const auto& [name, value] : tie_choices())
    if (value == tie) return name.c_str();
  return "cardinality";
}

// Theta specs: a single value, a comma list, or "a..b" (step 0.1).
std::vector<double> parse_thetas(const std::string& text) {
  std::vector<double> result;
  auto parse_one = [](const std::string& token) {
    size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad theta '" + token + "'");
    return value;
  };
  const size_t dots = text.find("..");
  if (dots != std::string::npos) {
    const double lo = parse_one(text.substr(0, dots));
    const double hi = parse_one(text.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("theta range is reversed");
    for (int i = 0;; ++i) {
      const double v = std::round((lo + 0.1 * i) * 1e9) / 1e9;
      if (v > hi + 1e-9) break;
      result.push_back(v);
    }
    return result;
  }
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const size_t end = comma == std::string::npos ? text.size() : comma;
    result.push_back(parse_one(text.substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return result;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

int write_predictions(const std::string& out_path, const std::vector<int>& labels,
                      unsigned long long seed, gfmm_tie_strategy tie,
                      const std::function<const char*(int)>& name_of) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      std::fprintf(stderr, "error: cannot write '%s'\n", out_path.c_str());
      return kExitData;
    }
    out = &file;
  }
  char header[128];
  std::snprintf(header, sizeof(header), "# gfmm-predictions version=1 seed=%llu tie=%s\n",
                seed, tie_name(tie));
  *out << header << "row,label\n";
  for (size_t i = 0; i < labels.size(); ++i) {
    const char* name = name_of(labels[i]);
    *out << (i + 1) << ','
         << (name ? csv_escape(name) : std::to_string(labels[i])) << '\n';
  }
  if (!*out) {
    std::fprintf(stderr, "error: failed while writing predictions\n");
    return kExitData;
  }
  return kExitOk;
}

int run_train(const DataOptions& data, const std::string& algorithm, double theta,
              double gamma, bool shuffle, unsigned long long seed,
              const std::string& out_path) {
  DatasetPtr ds;
  if (gfmm_status s = load_data(data, &ds)) return fail(s);
  const gfmm_algorithm algo = algorithm == "onln" ? GFMM_ALGO_ONLN : GFMM_ALGO_IOL;
  gfmm_model* raw = nullptr;
  if (gfmm_status s = gfmm_train(ds.get(), algo, theta, gamma, shuffle, seed, &raw))
    return fail(s);
  ModelPtr model(raw);
  if (gfmm_status s = gfmm_model_save(model.get(), out_path.c_str())) return fail(s);
  std::printf("trained %zu boxes from %zu rows -> %s\n", gfmm_model_boxes(model.get()),
              gfmm_dataset_rows(ds.get()), out_path.c_str());
  return kExitOk;
}

int run_ensemble(const DataOptions& data, double theta, double gamma, size_t members,
                 unsigned long long seed, const std::string& out_path) {
  DatasetPtr ds;
  if (gfmm_status s = load_data(data, &ds)) return fail(s);
  gfmm_ensemble* raw = nullptr;
  if (gfmm_status s =
          gfmm_ensemble_train(ds.get(), theta, gamma, members, seed, &raw))
    return fail(s);
  EnsemblePtr ensemble(raw);
  if (gfmm_status s = gfmm_ensemble_save(ensemble.get(), out_path.c_str()))
    return fail(s);
  std::printf("trained %zu members from %zu rows -> %s\n",
              gfmm_ensemble_members(ensemble.get()), gfmm_dataset_rows(ds.get()),
              out_path.c_str());
  return kExitOk;
}

int run_predict(const std::string& model_path, const DataOptions& data,
                gfmm_tie_strategy tie, unsigned long long seed,
                const std::string& out_path) {
  int kind = 0;
  if (gfmm_status s = gfmm_file_kind(model_path.c_str(), &kind)) return fail(s);
  DatasetPtr ds;
  if (gfmm_status s = load_data(data, &ds)) return fail(s);
  std::vector<int> labels(gfmm_dataset_rows(ds.get()), 0);

  if (kind == GFMM_FILE_ENSEMBLE) {
    gfmm_ensemble* raw = nullptr;
    if (gfmm_status s = gfmm_ensemble_load(model_path.c_str(), &raw)) return fail(s);
    EnsemblePtr ensemble(raw);
    if (gfmm_status s =
            gfmm_ensemble_predict(ensemble.get(), ds.get(), tie, seed, labels.data()))
      return fail(s);
    return write_predictions(out_path, labels, seed, tie, [&](int id) {
      return gfmm_ensemble_class_name(ensemble.get(), id);
    });
  }
  gfmm_model* raw = nullptr;
  if (gfmm_status s = gfmm_model_load(model_path.c_str(), &raw)) return fail(s);
  ModelPtr model(raw);
  if (gfmm_status s = gfmm_model_predict(model.get(), ds.get(), tie, seed, labels.data()))
    return fail(s);
  return write_predictions(out_path, labels, seed, tie, [&](int id) {
    return gfmm_model_class_name(model.get(), id);
  });
}

int run_prune(const std::string& model_path, const DataOptions& data, double threshold,
              const std::string& out_path) {
  gfmm_model* raw = nullptr;
  if (gfmm_status s = gfmm_model_load(model_path.c_str(), &raw)) return fail(s);
  ModelPtr model(raw);
  DatasetPtr ds;
  if (gfmm_status s = load_data(data, &ds)) return fail(s);
  gfmm_model* pruned_raw = nullptr;
  if (gfmm_status s = gfmm_prune(model.get(), ds.get(), threshold, &pruned_raw))
    return fail(s);
  ModelPtr pruned(pruned_raw);
  if (gfmm_status s = gfmm_model_save(pruned.get(), out_path.c_str())) return fail(s);
  std::printf("pruned %zu -> %zu boxes -> %s\n", gfmm_model_boxes(model.get()),
              gfmm_model_boxes(pruned.get()), out_path.c_str());
  return kExitOk;
}

int run_snapshot(const std::string& model_path, const std::string& out_path) {
  gfmm_model* raw = nullptr;
  if (gfmm_status s = gfmm_model_load(model_path.c_str(), &raw)) return fail(s);
  ModelPtr model(raw);
  if (gfmm_status s = gfmm_model_snapshot_svg(model.get(), out_path.c_str()))
    return fail(s);
  std::printf("wrote %s\n", out_path.c_str());
  return kExitOk;
}

int run_evaluate(const DataOptions& data, const std::vector<std::string>& algorithms,
                 const std::string& theta_spec, double gamma, int folds, double noise,
                 bool pruning, double prune_threshold, int reps, size_t members,
                 unsigned long long seed, int tie_override, const std::string& out_path,
                 const std::string& summary_path) {
  std::vector<int> algo_ids;
  for (const std::string& name : algorithms) {
    if (name == "onln")
      algo_ids.push_back(GFMM_ALGO_ONLN);
    else if (name == "onln+manhattan")
      algo_ids.push_back(GFMM_ALGO_ONLN_MANHATTAN);
    else if (name == "iol")
      algo_ids.push_back(GFMM_ALGO_IOL);
    else if (name == "iol-ensemble")
      algo_ids.push_back(GFMM_ALGO_IOL_ENSEMBLE);
    else {
      std::fprintf(stderr, "error: unknown algorithm '%s'\n", name.c_str());
      return kExitUsage;
    }
  }
  std::vector<double> thetas;
  try {
    thetas = parse_thetas(theta_spec);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }

  gfmm_eval_spec spec{};
  spec.data_path = data.path.c_str();
  spec.label_column = data.label_column;
  spec.has_header = !data.no_header;
  spec.algorithms = algo_ids.data();
  spec.algorithm_count = algo_ids.size();
  spec.thetas = thetas.data();
  spec.theta_count = thetas.size();
  spec.gamma = gamma;
  spec.folds = folds;
  spec.noise_fraction = noise;
  spec.pruning = pruning;
  spec.prune_threshold = prune_threshold;
  spec.repetitions = reps;
  spec.ensemble_members = members;
  spec.master_seed = seed;
  spec.tie_override = tie_override;

  char* summary = nullptr;
  if (gfmm_status s = gfmm_evaluate(&spec, out_path.c_str(), &summary)) return fail(s);
  std::unique_ptr<char, decltype(&gfmm_free_string)> guard(summary, &gfmm_free_string);
  if (summary_path.empty()) {
    std::fputs(summary ? summary : "", stdout);
  } else {
    std::ofstream file(summary_path, std::ios::binary);
    if (!file || !(file << (summary ? summary : ""))) {
      std::fprintf(stderr, "error: cannot write '%s'\n", summary_path.c_str());
      return kExitData;
    }
  }
  std::printf("metrics -> %s\n", out_path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbox classifier: train, evaluate, and inspect GFMM models"};
  app.set_version_flag("--version", std::string("gfmm ") + gfmm_version());
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "fit a single model and save it");
  DataOptions train_data;
  add_data_options(train, &train_data, /*with_labels=*/true);
  std::string train_algorithm = "iol";
  double train_theta = 0.3, train_gamma = 1.0;
  bool train_shuffle = false;
  unsigned long long train_seed = 0;
  std::string train_out;
  train->add_option("--algorithm", train_algorithm, "learning rule")
      ->check(CLI::IsMember({"onln", "iol"}))
      ->capture_default_str();
  train->add_option("--theta", train_theta, "maximum hyperbox size in [0,1]")
      ->capture_default_str();
  train->add_option("--gamma", train_gamma, "membership steepness (> 0)")
      ->capture_default_str();
  train->add_flag("--shuffle", train_shuffle, "shuffle presentation order");
  train->add_option("--seed", train_seed, "seed for --shuffle")->capture_default_str();
  train->add_option("--out", train_out, "output model file")->required();

  // ensemble
  auto* ensemble = app.add_subcommand("ensemble", "fit an ensemble and save it");
  DataOptions ensemble_data;
  add_data_options(ensemble, &ensemble_data, /*with_labels=*/true);
  double ensemble_theta = 0.3, ensemble_gamma = 1.0;
  size_t ensemble_members = 11;
  unsigned long long ensemble_seed = 0;
  std::string ensemble_out;
  ensemble->add_option("--theta", ensemble_theta, "maximum hyperbox size in [0,1]")
      ->capture_default_str();
  ensemble->add_option("--gamma", ensemble_gamma, "membership steepness (> 0)")
      ->capture_default_str();
  ensemble->add_option("--members", ensemble_members, "number of members")
      ->capture_default_str();
  ensemble->add_option("--seed", ensemble_seed, "master seed for member shuffles")
      ->capture_default_str();
  ensemble->add_option("--out", ensemble_out, "output ensemble file")->required();

  // predict
  auto* predict = app.add_subcommand("predict", "label rows with a saved model");
  DataOptions predict_data;
  add_data_options(predict, &predict_data, /*with_labels=*/false);
  std::string predict_model;
  gfmm_tie_strategy predict_tie = GFMM_TIE_CARDINALITY;
  unsigned long long predict_seed = 0;
  std::string predict_out;
  predict->add_option("--model", predict_model, "model or ensemble file")->required();
  predict->add_option("--tie", predict_tie, "tie-break strategy")
      ->transform(CLI::CheckedTransformer(tie_choices(), CLI::ignore_case))
      ->capture_default_str();
  predict->add_option("--seed", predict_seed, "seed for the random tie-break")
      ->capture_default_str();
  predict->add_option("--out", predict_out, "predictions CSV (default: stdout)");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "cross-validated benchmark");
  DataOptions evaluate_data;
  add_data_options(evaluate, &evaluate_data, /*with_labels=*/true);
  std::vector<std::string> evaluate_algorithms = {"iol"};
  std::string evaluate_thetas = "0.1..0.7";
  double evaluate_gamma = 1.0, evaluate_noise = 0.0, evaluate_prune_threshold = 0.5;
  int evaluate_folds = 4, evaluate_reps = 1;
  bool evaluate_prune = false;
  size_t evaluate_members = 11;
  unsigned long long evaluate_seed = 0;
  int evaluate_tie = -1;
  std::string evaluate_out, evaluate_summary;
  evaluate
      ->add_option("--algorithm", evaluate_algorithms,
                   "algorithms: onln, onln+manhattan, iol, iol-ensemble")
      ->delimiter(',')
      ->capture_default_str();
  evaluate
      ->add_option("--theta", evaluate_thetas, "theta list: 0.3 | 0.1,0.3 | 0.1..0.7")
      ->capture_default_str();
  evaluate->add_option("--gamma", evaluate_gamma, "membership steepness (> 0)")
      ->capture_default_str();
  evaluate->add_option("--folds", evaluate_folds, "stratified fold count")
      ->capture_default_str();
  evaluate->add_option("--noise", evaluate_noise, "training label noise fraction")
      ->capture_default_str();
  evaluate->add_flag("--prune", evaluate_prune, "prune on a held-out validation fold");
  evaluate
      ->add_option("--prune-threshold", evaluate_prune_threshold,
                   "minimum validation accuracy per box")
      ->capture_default_str();
  evaluate->add_option("--reps", evaluate_reps, "shuffled repetitions per fold")
      ->capture_default_str();
  evaluate->add_option("--members", evaluate_members, "iol-ensemble member count")
      ->capture_default_str();
  evaluate->add_option("--seed", evaluate_seed, "master seed")->capture_default_str();
  evaluate->add_option("--tie", evaluate_tie, "")
      ->transform(CLI::CheckedTransformer(tie_choices(), CLI::ignore_case))
      ->description("override the per-algorithm tie-break strategy");
  evaluate->add_option("--out", evaluate_out, "metrics CSV file")->required();
  evaluate->add_option("--summary", evaluate_summary,
                       "summary text file (default: stdout)");

  // prune
  auto* prune = app.add_subcommand("prune", "drop low-accuracy boxes from a model");
  DataOptions prune_data;
  add_data_options(prune, &prune_data, /*with_labels=*/true);
  std::string prune_model, prune_out;
  double prune_threshold = 0.5;
  prune->add_option("--model", prune_model, "model file")->required();
  prune
      ->add_option("--prune-threshold", prune_threshold,
                   "minimum validation accuracy per box")
      ->capture_default_str();
  prune->add_option("--out", prune_out, "output model file")->required();

  // snapshot
  auto* snapshot = app.add_subcommand("snapshot", "render a 2-feature model as SVG");
  std::string snapshot_model, snapshot_out;
  snapshot->add_option("--model", snapshot_model, "model file")->required();
  snapshot->add_option("--out", snapshot_out, "output SVG file")->required();

  CLI11_PARSE(app, argc, argv);

  if (train->parsed())
    return run_train(train_data, train_algorithm, train_theta, train_gamma,
                     train_shuffle, train_seed, train_out);
  if (ensemble->parsed())
    return run_ensemble(ensemble_data, ensemble_theta, ensemble_gamma, ensemble_members,
                        ensemble_seed, ensemble_out);
  if (predict->parsed())
    return run_predict(predict_model, predict_data, predict_tie, predict_seed,
                       predict_out);
  if (evaluate->parsed())
    return run_evaluate(evaluate_data, evaluate_algorithms, evaluate_thetas,
                        evaluate_gamma, evaluate_folds, evaluate_noise, evaluate_prune,
                        evaluate_prune_threshold, evaluate_reps, evaluate_members,
                        evaluate_seed, evaluate_tie, evaluate_out, evaluate_summary);
  if (prune->parsed())
    return run_prune(prune_model, prune_data, prune_threshold, prune_out);
  if (snapshot->parsed()) return run_snapshot(snapshot_model, snapshot_out);
  return kExitUsage;
}
