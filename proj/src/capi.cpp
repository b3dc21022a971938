#include "gfmm.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "gfmm/dataset.hpp"
#include "gfmm/evaluate.hpp"
#include "gfmm/model_io.hpp"
#include "gfmm/predict.hpp"
#include "gfmm/refine.hpp"
#include "gfmm/rng.hpp"
#include "gfmm/snapshot.hpp"
#include "gfmm/train_iol.hpp"
#include "gfmm/train_online.hpp"

// Handle types: thin owning wrappers over the C++ objects.
struct gfmm_dataset {
  gfmm::Dataset data;
};
struct gfmm_model {
  gfmm::TrainedModel model;
};
struct gfmm_ensemble {
  gfmm::EnsembleModel ensemble;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Runs `fn`, translating exceptions into status codes and the thread-local
// message. Every exported function body goes through here.
template <typename Fn>
gfmm_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const gfmm::FormatVersionError& e) {
    set_error(e.what());
    return GFMM_ERR_VERSION;
  } catch (const gfmm::DataError& e) {
    set_error(e.what());
    return GFMM_ERR_DATA;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return GFMM_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return GFMM_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return GFMM_ERR_INTERNAL;
  }
}

gfmm_status require(bool ok, const char* message) {
  if (ok) return GFMM_OK;
  set_error(message);
  return GFMM_ERR_ARGUMENT;
}

bool valid_tie(int tie) {
  return tie == GFMM_TIE_CARDINALITY || tie == GFMM_TIE_MANHATTAN ||
         tie == GFMM_TIE_RANDOM;
}

gfmm::TieStrategy to_tie(gfmm_tie_strategy tie) {
  switch (tie) {
    case GFMM_TIE_MANHATTAN:
      return gfmm::TieStrategy::manhattan;
    case GFMM_TIE_RANDOM:
      return gfmm::TieStrategy::random;
    case GFMM_TIE_CARDINALITY:
    default:
      return gfmm::TieStrategy::cardinality;
  }
}

// Scaled + clamped unit-cube patterns for a query dataset.
std::vector<gfmm::Pattern> query_patterns(const gfmm::TrainedModel& model,
                                          const gfmm::Dataset& ds) {
  if (ds.features() != model.dims())
    throw std::invalid_argument("dataset width does not match the model");
  return gfmm::to_scaled_patterns(ds, model.scaler, /*clamp=*/true);
}

}  // namespace

extern "C" {

const char* gfmm_version(void) { return "1.0.0"; }

const char* gfmm_last_error(void) { return g_last_error.c_str(); }

void gfmm_free_string(char* s) { delete[] s; }

/* ------------------------------------------------------------------ */

gfmm_status gfmm_dataset_load_csv(const char* path, int label_column, int has_header,
                                  gfmm_dataset** out) {
  if (gfmm_status s = require(path && out, "null argument")) return s;
  return guarded([&] {
    auto ds = std::make_unique<gfmm_dataset>();
    ds->data = gfmm::load_csv(path, label_column, has_header != 0);
    *out = ds.release();
    return GFMM_OK;
  });
}

gfmm_status gfmm_dataset_from_rows(const double* values, size_t rows, size_t cols,
                                   const int* labels, gfmm_dataset** out) {
  if (gfmm_status s = require(values && out && rows > 0 && cols > 0,
                              "null or empty row block"))
    return s;
  return guarded([&] {
    auto ds = std::make_unique<gfmm_dataset>();
    ds->data.rows.assign(rows, std::vector<double>(cols));
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) ds->data.rows[i][j] = values[i * cols + j];
    if (labels) {
      ds->data.labels.assign(labels, labels + rows);
      for (int l : ds->data.labels) {
        if (l < 1) throw std::invalid_argument("class ids must be >= 1");
        ds->data.label_names.emplace(l, std::to_string(l));
      }
    }
    *out = ds.release();
    return GFMM_OK;
  });
}

void gfmm_dataset_free(gfmm_dataset* ds) { delete ds; }

size_t gfmm_dataset_rows(const gfmm_dataset* ds) { return ds ? ds->data.size() : 0; }

size_t gfmm_dataset_features(const gfmm_dataset* ds) {
  return ds ? ds->data.features() : 0;
}

int gfmm_dataset_has_labels(const gfmm_dataset* ds) {
  return ds && ds->data.has_labels() ? 1 : 0;
}

/* ------------------------------------------------------------------ */

gfmm_status gfmm_train(const gfmm_dataset* ds, gfmm_algorithm algorithm, double theta,
                       double gamma, int shuffle, unsigned long long seed,
                       gfmm_model** out) {
  if (gfmm_status s = require(ds && out, "null argument")) return s;
  if (gfmm_status s = require(algorithm == GFMM_ALGO_ONLN || algorithm == GFMM_ALGO_IOL,
                              "train accepts GFMM_ALGO_ONLN or GFMM_ALGO_IOL"))
    return s;
  return guarded([&] {
    if (!ds->data.has_labels())
      throw gfmm::DataError("training needs a labeled dataset");
    const gfmm::FeatureScaler scaler = gfmm::fit_scaler(ds->data.rows);
    std::vector<gfmm::Pattern> patterns =
        gfmm::to_scaled_patterns(ds->data, scaler, /*clamp=*/true);
    if (shuffle) {
      gfmm::Rng rng(seed);
      rng.shuffle(patterns);
    }
    const gfmm::ModelParams params =
        gfmm::ModelParams::make(theta, ds->data.features(), gamma);
    auto handle = std::make_unique<gfmm_model>();
    handle->model = algorithm == GFMM_ALGO_IOL ? gfmm::train_iol(patterns, params)
                                               : gfmm::train_online(patterns, params);
    handle->model.scaler = scaler;
    handle->model.class_names = ds->data.label_names;
    *out = handle.release();
    return GFMM_OK;
  });
}

void gfmm_model_free(gfmm_model* m) { delete m; }

size_t gfmm_model_boxes(const gfmm_model* m) { return m ? m->model.boxes.size() : 0; }

size_t gfmm_model_features(const gfmm_model* m) { return m ? m->model.dims() : 0; }

gfmm_status gfmm_model_save(const gfmm_model* m, const char* path) {
  if (gfmm_status s = require(m && path, "null argument")) return s;
  return guarded([&] {
    gfmm::save_model(m->model, path);
    return GFMM_OK;
  });
}

gfmm_status gfmm_model_load(const char* path, gfmm_model** out) {
  if (gfmm_status s = require(path && out, "null argument")) return s;
  return guarded([&] {
    auto handle = std::make_unique<gfmm_model>();
    handle->model = gfmm::load_model(path);
    *out = handle.release();
    return GFMM_OK;
  });
}

const char* gfmm_model_class_name(const gfmm_model* m, int class_id) {
  if (!m) return nullptr;
  const auto it = m->model.class_names.find(class_id);
  return it == m->model.class_names.end() ? nullptr : it->second.c_str();
}

gfmm_status gfmm_model_predict(const gfmm_model* m, const gfmm_dataset* ds,
                               gfmm_tie_strategy tie, unsigned long long seed,
                               int* out_labels) {
  if (gfmm_status s = require(m && ds && out_labels, "null argument")) return s;
  if (gfmm_status s = require(valid_tie(tie), "unknown tie strategy")) return s;
  return guarded([&] {
    const std::vector<gfmm::Pattern> queries = query_patterns(m->model, ds->data);
    for (std::size_t q = 0; q < queries.size(); ++q)
      out_labels[q] = gfmm::predict(queries[q], m->model, to_tie(tie),
                                    gfmm::mix_seed(seed, q));
    return GFMM_OK;
  });
}

gfmm_status gfmm_model_predict_row(const gfmm_model* m, const double* row, size_t cols,
                                   gfmm_tie_strategy tie, unsigned long long seed,
                                   int* out_label) {
  if (gfmm_status s = require(m && row && out_label, "null argument")) return s;
  if (gfmm_status s = require(valid_tie(tie), "unknown tie strategy")) return s;
  return guarded([&] {
    const gfmm::Pattern raw =
        gfmm::Pattern::point(std::vector<double>(row, row + cols));
    const gfmm::Pattern x = gfmm::into_model_space(m->model, raw);
    *out_label = gfmm::predict(x, m->model, to_tie(tie), seed);
    return GFMM_OK;
  });
}

gfmm_status gfmm_prune(const gfmm_model* m, const gfmm_dataset* validation,
                       double threshold, gfmm_model** out) {
  if (gfmm_status s = require(m && validation && out, "null argument")) return s;
  return guarded([&] {
    if (!validation->data.has_labels())
      throw gfmm::DataError("pruning needs a labeled validation set");
    if (validation->data.features() != m->model.dims())
      throw std::invalid_argument("validation width does not match the model");
    auto handle = std::make_unique<gfmm_model>();
    handle->model =
        gfmm::prune(m->model, gfmm::to_patterns(validation->data), threshold);
    *out = handle.release();
    return GFMM_OK;
  });
}

gfmm_status gfmm_model_snapshot_svg(const gfmm_model* m, const char* path) {
  if (gfmm_status s = require(m && path, "null argument")) return s;
  return guarded([&] {
    if (m->model.dims() != 2) {
      set_error("snapshot needs a model with exactly two features");
      return GFMM_ERR_UNSUPPORTED;
    }
    gfmm::save_snapshot_svg(m->model, path);
    return GFMM_OK;
  });
}

/* ------------------------------------------------------------------ */

gfmm_status gfmm_ensemble_train(const gfmm_dataset* ds, double theta, double gamma,
                                size_t members, unsigned long long seed,
                                gfmm_ensemble** out) {
  if (gfmm_status s = require(ds && out, "null argument")) return s;
  if (gfmm_status s = require(members >= 1, "at least one member required")) return s;
  return guarded([&] {
    if (!ds->data.has_labels())
      throw gfmm::DataError("training needs a labeled dataset");
    const gfmm::FeatureScaler scaler = gfmm::fit_scaler(ds->data.rows);
    const std::vector<gfmm::Pattern> patterns =
        gfmm::to_scaled_patterns(ds->data, scaler, /*clamp=*/true);
    const gfmm::ModelParams params =
        gfmm::ModelParams::make(theta, ds->data.features(), gamma);
    auto handle = std::make_unique<gfmm_ensemble>();
    handle->ensemble = gfmm::train_ensemble(patterns, params, members, seed);
    for (gfmm::TrainedModel& member : handle->ensemble.members) {
      member.scaler = scaler;
      member.class_names = ds->data.label_names;
    }
    *out = handle.release();
    return GFMM_OK;
  });
}

void gfmm_ensemble_free(gfmm_ensemble* e) { delete e; }

size_t gfmm_ensemble_members(const gfmm_ensemble* e) {
  return e ? e->ensemble.members.size() : 0;
}

gfmm_status gfmm_ensemble_save(const gfmm_ensemble* e, const char* path) {
  if (gfmm_status s = require(e && path, "null argument")) return s;
  return guarded([&] {
    gfmm::save_ensemble(e->ensemble, path);
    return GFMM_OK;
  });
}

gfmm_status gfmm_ensemble_load(const char* path, gfmm_ensemble** out) {
  if (gfmm_status s = require(path && out, "null argument")) return s;
  return guarded([&] {
    auto handle = std::make_unique<gfmm_ensemble>();
    handle->ensemble = gfmm::load_ensemble(path);
    *out = handle.release();
    return GFMM_OK;
  });
}

const char* gfmm_ensemble_class_name(const gfmm_ensemble* e, int class_id) {
  if (!e || e->ensemble.members.empty()) return nullptr;
  const auto& names = e->ensemble.members.front().class_names;
  const auto it = names.find(class_id);
  return it == names.end() ? nullptr : it->second.c_str();
}

gfmm_status gfmm_ensemble_predict(const gfmm_ensemble* e, const gfmm_dataset* ds,
                                  gfmm_tie_strategy tie, unsigned long long seed,
                                  int* out_labels) {
  if (gfmm_status s = require(e && ds && out_labels, "null argument")) return s;
  if (gfmm_status s = require(valid_tie(tie), "unknown tie strategy")) return s;
  return guarded([&] {
    if (e->ensemble.members.empty())
      throw std::invalid_argument("empty ensemble");
    const std::vector<gfmm::Pattern> queries =
        query_patterns(e->ensemble.members.front(), ds->data);
    for (std::size_t q = 0; q < queries.size(); ++q)
      out_labels[q] = gfmm::predict_ensemble(queries[q], e->ensemble, to_tie(tie),
                                             gfmm::mix_seed(seed, q));
    return GFMM_OK;
  });
}

gfmm_status gfmm_file_kind(const char* path, int* out_kind) {
  if (gfmm_status s = require(path && out_kind, "null argument")) return s;
  return guarded([&] {
    *out_kind = gfmm::sniff_model_file(path) == gfmm::ModelFileKind::model
                    ? GFMM_FILE_MODEL
                    : GFMM_FILE_ENSEMBLE;
    return GFMM_OK;
  });
}

/* ------------------------------------------------------------------ */

gfmm_status gfmm_evaluate(const gfmm_eval_spec* spec, const char* out_csv_path,
                          char** out_summary) {
  if (gfmm_status s = require(spec && out_csv_path, "null argument")) return s;
  if (gfmm_status s = require(spec->data_path && spec->algorithms &&
                                  spec->algorithm_count > 0 && spec->thetas &&
                                  spec->theta_count > 0,
                              "evaluation spec misses required fields"))
    return s;
  return guarded([&] {
    gfmm::ExperimentSpec es;
    es.data_path = spec->data_path;
    es.label_column = spec->label_column;
    es.has_header = spec->has_header != 0;
    es.algorithms.clear();
    for (size_t i = 0; i < spec->algorithm_count; ++i) {
      const int a = spec->algorithms[i];
      if (a < GFMM_ALGO_ONLN || a > GFMM_ALGO_IOL_ENSEMBLE)
        throw std::invalid_argument("unknown algorithm id");
      switch (a) {
        case GFMM_ALGO_ONLN:
          es.algorithms.push_back(gfmm::Algorithm::onln);
          break;
        case GFMM_ALGO_IOL:
          es.algorithms.push_back(gfmm::Algorithm::iol);
          break;
        case GFMM_ALGO_ONLN_MANHATTAN:
          es.algorithms.push_back(gfmm::Algorithm::onln_manhattan);
          break;
        default:
          es.algorithms.push_back(gfmm::Algorithm::iol_ensemble);
          break;
      }
    }
    es.thetas.assign(spec->thetas, spec->thetas + spec->theta_count);
    es.gamma = spec->gamma;
    es.folds = spec->folds;
    es.noise_fraction = spec->noise_fraction;
    es.pruning = spec->pruning != 0;
    es.prune_threshold = spec->prune_threshold;
    es.repetitions = spec->repetitions;
    es.ensemble_members = spec->ensemble_members;
    es.master_seed = spec->master_seed;
    if (spec->tie_override >= 0) {
      if (!valid_tie(spec->tie_override))
        throw std::invalid_argument("unknown tie strategy");
      es.tie_override = to_tie(static_cast<gfmm_tie_strategy>(spec->tie_override));
    }

    const std::vector<gfmm::MetricsRecord> records = gfmm::run_experiment(es);
    const std::string csv = gfmm::metrics_to_csv(records, es.master_seed);
    std::ofstream out(out_csv_path, std::ios::binary);
    if (!out) throw gfmm::DataError(std::string("cannot write '") + out_csv_path + "'");
    out << csv;
    if (!out)
      throw gfmm::DataError(std::string("failed while writing '") + out_csv_path + "'");

    if (out_summary) {
      const auto rows = gfmm::summarize(records);
      const std::string text = gfmm::summary_to_text(rows);
      char* copy = new char[text.size() + 1];
      std::memcpy(copy, text.c_str(), text.size() + 1);
      *out_summary = copy;
    }
    return GFMM_OK;
  });
}

} /* extern "C" */
