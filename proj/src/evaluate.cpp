#include "gfmm/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "gfmm/refine.hpp"
#include "gfmm/rng.hpp"
#include "gfmm/train_iol.hpp"
#include "gfmm/train_online.hpp"

namespace gfmm {

namespace {

// Salts keeping the derived seed streams of an experiment apart.
constexpr std::uint64_t kSaltFolds = 0x666f6c6473;   // fold assignment
constexpr std::uint64_t kSaltNoise = 0x6e6f697365;   // label corruption
constexpr std::uint64_t kSaltOrder = 0x6f72646572;   // presentation shuffles
constexpr std::uint64_t kSaltCell = 0x63656c6c;      // per-cell recorded seed
constexpr std::uint64_t kSaltTie = 0x746965;         // random tie-breaks
constexpr std::uint64_t kSaltEnsemble = 0x656e73;    // member shuffles

const char* kAlgorithmNames[] = {"onln", "onln+manhattan", "iol", "iol-ensemble"};

}  // namespace

const char* algorithm_name(Algorithm a) {
  return kAlgorithmNames[static_cast<int>(a)];
}

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
  for (int i = 0; i < 4; ++i)
    if (name == kAlgorithmNames[i]) return static_cast<Algorithm>(i);
  return std::nullopt;
}

TieStrategy default_tie_strategy(Algorithm a) {
  switch (a) {
    case Algorithm::onln:
      return TieStrategy::random;
    case Algorithm::onln_manhattan:
      return TieStrategy::manhattan;
    case Algorithm::iol:
    case Algorithm::iol_ensemble:
      return TieStrategy::cardinality;
  }
  return TieStrategy::cardinality;
}

std::vector<double> default_theta_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 7; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const int> labels,
                                                       std::size_t k,
                                                       std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("stratified_folds: need at least 2 folds");
  if (k > labels.size())
    throw std::invalid_argument("stratified_folds: more folds than samples");

  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  Rng rng(seed);
  std::vector<std::vector<std::size_t>> folds(k);
  for (auto& [label, members] : by_class) {
    rng.shuffle(members);
    for (std::size_t i = 0; i < members.size(); ++i)
      folds[i % k].push_back(members[i]);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

std::vector<Pattern> inject_label_noise(std::span<const Pattern> data, double fraction,
                                        std::uint64_t seed) {
  if (!(fraction >= 0.0) || fraction >= 1.0)
    throw std::invalid_argument("inject_label_noise: fraction must lie in [0, 1)");
  std::vector<Pattern> out(data.begin(), data.end());
  const std::size_t flips =
      static_cast<std::size_t>(std::llround(fraction * static_cast<double>(data.size())));
  if (flips == 0) return out;

  std::set<int> class_set;
  for (const Pattern& p : data) class_set.insert(p.label);
  if (class_set.size() < 2)
    throw std::invalid_argument("inject_label_noise: need at least two classes");
  const std::vector<int> classes(class_set.begin(), class_set.end());

  Rng rng(seed);
  const std::vector<std::size_t> targets = rng.sample_indices(out.size(), flips);
  for (std::size_t idx : targets) {
    const int current = out[idx].label;
    const std::size_t pos = static_cast<std::size_t>(
        std::lower_bound(classes.begin(), classes.end(), current) - classes.begin());
    // Uniform draw over the other classes.
    const std::size_t r = rng.index(classes.size() - 1);
    out[idx].label = classes[r >= pos ? r + 1 : r];
  }
  return out;
}

namespace {

// Everything about one fold cycle that does not depend on theta/rep/algorithm.
struct FoldContext {
  std::vector<std::size_t> train_idx;  // dataset order
  FeatureScaler scaler;                // fitted on the training rows
  std::vector<Pattern> train;          // scaled, labels after corruption
  std::vector<Pattern> validation;     // raw units, labels after corruption
  std::vector<Pattern> test;           // raw units, true labels
};

FoldContext make_fold_context(const Dataset& ds,
                              const std::vector<std::vector<std::size_t>>& folds,
                              std::size_t f, const ExperimentSpec& spec) {
  const std::size_t k = folds.size();
  FoldContext ctx;

  const std::size_t val_fold = (f + 1) % k;  // only used with pruning on
  std::vector<std::size_t> val_idx;
  for (std::size_t g = 0; g < k; ++g) {
    if (g == f) continue;
    if (spec.pruning && g == val_fold) {
      val_idx = folds[g];
      continue;
    }
    ctx.train_idx.insert(ctx.train_idx.end(), folds[g].begin(), folds[g].end());
  }
  std::sort(ctx.train_idx.begin(), ctx.train_idx.end());

  // Corrupt labels over the pool the models get to see: training plus, with
  // pruning on, the validation fold. The same corruption serves every theta
  // and repetition of this fold cycle.
  std::vector<int> labels_seen(ds.labels);
  if (spec.noise_fraction > 0.0) {
    std::vector<std::size_t> pool(ctx.train_idx);
    pool.insert(pool.end(), val_idx.begin(), val_idx.end());
    std::sort(pool.begin(), pool.end());
    std::vector<Pattern> pool_patterns;
    pool_patterns.reserve(pool.size());
    for (std::size_t idx : pool)
      pool_patterns.push_back(Pattern::point(ds.rows[idx], ds.labels[idx]));
    const std::uint64_t noise_seed = mix_seed(mix_seed(spec.master_seed, kSaltNoise), f);
    const std::vector<Pattern> noisy =
        inject_label_noise(pool_patterns, spec.noise_fraction, noise_seed);
    for (std::size_t p = 0; p < pool.size(); ++p) labels_seen[pool[p]] = noisy[p].label;
  }

  std::vector<std::vector<double>> train_rows;
  train_rows.reserve(ctx.train_idx.size());
  for (std::size_t idx : ctx.train_idx) train_rows.push_back(ds.rows[idx]);
  ctx.scaler = fit_scaler(train_rows);

  for (std::size_t idx : ctx.train_idx) {
    Pattern p = Pattern::point(ctx.scaler.scale_row(ds.rows[idx]), labels_seen[idx]);
    ctx.train.push_back(clamp_to_unit(std::move(p)));
  }
  for (std::size_t idx : val_idx)
    ctx.validation.push_back(Pattern::point(ds.rows[idx], labels_seen[idx]));
  for (std::size_t idx : folds[f])
    ctx.test.push_back(Pattern::point(ds.rows[idx], ds.labels[idx]));
  return ctx;
}

void validate_spec(const Dataset& ds, const ExperimentSpec& spec) {
  if (!ds.has_labels()) throw DataError("evaluation needs a labeled dataset");
  if (spec.algorithms.empty())
    throw std::invalid_argument("experiment lists no algorithms");
  if (spec.thetas.empty()) throw std::invalid_argument("experiment lists no thetas");
  if (spec.repetitions < 1)
    throw std::invalid_argument("experiment needs at least one repetition");
  for (double theta : spec.thetas)
    ModelParams::make(theta, ds.features(), spec.gamma).validate(ds.features());
  if (!(spec.noise_fraction >= 0.0) || spec.noise_fraction >= 1.0)
    throw std::invalid_argument("noise fraction must lie in [0, 1)");
  if (!(spec.prune_threshold >= 0.0) || spec.prune_threshold > 1.0)
    throw std::invalid_argument("prune threshold must lie in [0, 1]");
  for (Algorithm a : spec.algorithms) {
    if (a == Algorithm::iol_ensemble) {
      if (spec.ensemble_members < 1)
        throw std::invalid_argument("ensembles need at least one member");
      if (spec.pruning)
        throw std::invalid_argument("pruning inside ensembles is not supported");
    }
  }
}

}  // namespace

std::vector<MetricsRecord> run_experiment(const Dataset& ds, const ExperimentSpec& spec,
                                          std::vector<std::string>* warnings) {
  validate_spec(ds, spec);

  const auto folds = stratified_folds(ds.labels, spec.folds,
                                      mix_seed(spec.master_seed, kSaltFolds));

  std::vector<FoldContext> contexts;
  contexts.reserve(spec.folds);
  for (std::size_t f = 0; f < spec.folds; ++f)
    contexts.push_back(make_fold_context(ds, folds, f, spec));

  std::vector<MetricsRecord> records;
  for (Algorithm algo : spec.algorithms) {
    const TieStrategy tie = spec.tie_override.value_or(default_tie_strategy(algo));
    for (std::size_t ti = 0; ti < spec.thetas.size(); ++ti) {
      const double theta = spec.thetas[ti];
      for (std::size_t f = 0; f < spec.folds; ++f) {
        const FoldContext& ctx = contexts[f];
        const ModelParams params =
            ModelParams::make(theta, ds.features(), spec.gamma);
        for (std::size_t r = 0; r < spec.repetitions; ++r) {
          std::uint64_t cell_seed = mix_seed(spec.master_seed, kSaltCell);
          cell_seed = mix_seed(cell_seed, ti);
          cell_seed = mix_seed(cell_seed, f);
          cell_seed = mix_seed(cell_seed, r);
          try {
            // Presentation order: file order for single-repetition runs,
            // an own shuffle per repetition otherwise. The shuffle seed
            // ignores theta and the algorithm so paired cells see the same
            // order.
            std::vector<Pattern> train(ctx.train);
            if (spec.repetitions > 1) {
              const std::uint64_t order_seed =
                  mix_seed(mix_seed(mix_seed(spec.master_seed, kSaltOrder), f), r);
              Rng rng(order_seed);
              rng.shuffle(train);
            }

            MetricsRecord rec;
            rec.algorithm = algo;
            rec.theta = theta;
            rec.fold = f;
            rec.rep = r;
            rec.seed = cell_seed;
            rec.noise = spec.noise_fraction;
            rec.pruned = spec.pruning;

            TrainedModel model;
            EnsembleModel ensemble;
            const bool is_ensemble = algo == Algorithm::iol_ensemble;

            const auto t0 = std::chrono::steady_clock::now();
            if (is_ensemble) {
              const std::uint64_t ens_seed = mix_seed(
                  mix_seed(mix_seed(spec.master_seed, kSaltEnsemble), f), r);
              ensemble = train_ensemble(train, params, spec.ensemble_members, ens_seed);
            } else if (algo == Algorithm::iol) {
              model = train_iol(train, params);
            } else {
              model = train_online(train, params);
            }
            const auto t1 = std::chrono::steady_clock::now();
            rec.train_seconds = std::chrono::duration<double>(t1 - t0).count();

            if (is_ensemble) {
              for (TrainedModel& member : ensemble.members) member.scaler = ctx.scaler;
              rec.boxes = 0;
              for (const TrainedModel& member : ensemble.members)
                rec.boxes += member.boxes.size();
            } else {
              model.scaler = ctx.scaler;
              if (spec.pruning)
                model = prune(model, ctx.validation, spec.prune_threshold);
              rec.boxes = model.boxes.size();
            }

            const std::uint64_t tie_seed = mix_seed(cell_seed, kSaltTie);
            std::size_t wrong = 0;
            for (std::size_t q = 0; q < ctx.test.size(); ++q) {
              const std::uint64_t qseed = mix_seed(tie_seed, q);
              int predicted;
              if (is_ensemble) {
                const Pattern x = into_model_space(ensemble.members.front(), ctx.test[q]);
                predicted = predict_ensemble(x, ensemble, tie, qseed);
              } else {
                const Pattern x = into_model_space(model, ctx.test[q]);
                predicted = predict(x, model, tie, qseed);
              }
              if (predicted != ctx.test[q].label) ++wrong;
            }
            rec.error_pct = 100.0 * static_cast<double>(wrong) /
                            static_cast<double>(ctx.test.size());
            records.push_back(rec);
          } catch (const std::exception& e) {
            if (warnings) {
              char buf[256];
              std::snprintf(buf, sizeof(buf), "cell %s theta=%g fold=%zu rep=%zu: %s",
                            algorithm_name(algo), theta, f, r, e.what());
              warnings->push_back(buf);
            }
          }
        }
      }
    }
  }
  return records;
}

std::vector<MetricsRecord> run_experiment(const ExperimentSpec& spec,
                                          std::vector<std::string>* warnings) {
  const Dataset ds = load_csv(spec.data_path, spec.label_column, spec.has_header);
  return run_experiment(ds, spec, warnings);
}

std::vector<SummaryRow> summarize(std::span<const MetricsRecord> records) {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> errors;  // per row, for the deviation
  for (const MetricsRecord& rec : records) {
    std::size_t g = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].algorithm == rec.algorithm && rows[i].theta == rec.theta) {
        g = i;
        break;
      }
    }
    if (g == rows.size()) {
      SummaryRow row;
      row.algorithm = rec.algorithm;
      row.theta = rec.theta;
      rows.push_back(row);
      errors.emplace_back();
    }
    rows[g].cells += 1;
    rows[g].mean_error_pct += rec.error_pct;
    rows[g].mean_boxes += static_cast<double>(rec.boxes);
    rows[g].mean_train_seconds += rec.train_seconds;
    errors[g].push_back(rec.error_pct);
  }
  for (std::size_t g = 0; g < rows.size(); ++g) {
    const double n = static_cast<double>(rows[g].cells);
    rows[g].mean_error_pct /= n;
    rows[g].mean_boxes /= n;
    rows[g].mean_train_seconds /= n;
    double var = 0.0;
    for (double e : errors[g]) {
      const double d = e - rows[g].mean_error_pct;
      var += d * d;
    }
    rows[g].std_error_pct = std::sqrt(var / n);  // population deviation
  }
  return rows;
}

std::string metrics_to_csv(std::span<const MetricsRecord> records,
                           std::uint64_t master_seed) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof(line), "# gfmm-metrics version=1 master_seed=%llu\n",
                static_cast<unsigned long long>(master_seed));
  out += line;
  out += "algorithm,theta,fold,rep,seed,noise,pruned,error_pct,boxes,train_seconds\n";
  for (const MetricsRecord& r : records) {
    std::snprintf(line, sizeof(line), "%s,%.6g,%zu,%zu,%llu,%.6g,%d,%.6f,%zu,%.6f\n",
                  algorithm_name(r.algorithm), r.theta, r.fold, r.rep,
                  static_cast<unsigned long long>(r.seed), r.noise, r.pruned ? 1 : 0,
                  r.error_pct, r.boxes, r.train_seconds);
    out += line;
  }
  return out;
}

std::string summary_to_text(std::span<const SummaryRow> rows) {
  std::string out =
      "algorithm        theta  cells  error%  (std)    boxes    train_s\n";
  char line[160];
  for (const SummaryRow& r : rows) {
    std::snprintf(line, sizeof(line), "%-16s %5.2f %6zu %7.2f %7.2f %8.1f %10.4f\n",
                  algorithm_name(r.algorithm), r.theta, r.cells, r.mean_error_pct,
                  r.std_error_pct, r.mean_boxes, r.mean_train_seconds);
    out += line;
  }
  return out;
}

}  // namespace gfmm
