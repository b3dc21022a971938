/*
 * C interface to the fuzzy min-max classifier library.
 *
 * Everything lives behind opaque handles; every fallible call returns a
 * gfmm_status and stores a human-readable explanation retrievable via
 * gfmm_last_error() (thread-local). Handles are created by _load/_train
 * calls and released with the matching _free. Strings returned by
 * *_class_name stay valid while their handle lives; strings returned
 * through char** out-parameters are released with gfmm_free_string().
 */

#ifndef GFMM_H
#define GFMM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#if defined(GFMM_BUILD_SHARED)
#define GFMM_API __declspec(dllexport)
#else
#define GFMM_API __declspec(dllimport)
#endif
#else
#define GFMM_API __attribute__((visibility("default")))
#endif

typedef enum gfmm_status {
  GFMM_OK = 0,
  GFMM_ERR_ARGUMENT = 1,    /* null handle or invalid parameter */
  GFMM_ERR_DATA = 2,        /* unreadable or malformed file/dataset */
  GFMM_ERR_VERSION = 3,     /* model file from a newer format version */
  GFMM_ERR_UNSUPPORTED = 4, /* valid input this operation cannot act on */
  GFMM_ERR_INTERNAL = 5
} gfmm_status;

typedef enum gfmm_algorithm {
  GFMM_ALGO_ONLN = 0, /* classic online learning (overlap contraction) */
  GFMM_ALGO_IOL = 1,  /* overlap-avoiding online learning */
  /* evaluation-only variants: */
  GFMM_ALGO_ONLN_MANHATTAN = 2, /* onln scored with the nearest-centroid tie-break */
  GFMM_ALGO_IOL_ENSEMBLE = 3    /* committee of shuffled iol members */
} gfmm_algorithm;

typedef enum gfmm_tie_strategy {
  GFMM_TIE_CARDINALITY = 0,
  GFMM_TIE_MANHATTAN = 1,
  GFMM_TIE_RANDOM = 2
} gfmm_tie_strategy;

/* label_column values with special meaning */
#define GFMM_LABEL_COLUMN_LAST (-1)
#define GFMM_LABEL_COLUMN_NONE (-2)

/* gfmm_file_kind results */
#define GFMM_FILE_MODEL 0
#define GFMM_FILE_ENSEMBLE 1

typedef struct gfmm_dataset gfmm_dataset;
typedef struct gfmm_model gfmm_model;
typedef struct gfmm_ensemble gfmm_ensemble;

GFMM_API const char* gfmm_version(void);

/* Message for the last failing call on this thread ("" if none). */
GFMM_API const char* gfmm_last_error(void);

GFMM_API void gfmm_free_string(char* s);

/* ------------------------------------------------------------------ */
/* datasets                                                            */

GFMM_API gfmm_status gfmm_dataset_load_csv(const char* path, int label_column,
                                           int has_header, gfmm_dataset** out);

/* values: rows*cols doubles, row-major. labels: one id (>= 1) per row, or
 * NULL for unlabeled query data. */
GFMM_API gfmm_status gfmm_dataset_from_rows(const double* values, size_t rows,
                                            size_t cols, const int* labels,
                                            gfmm_dataset** out);

GFMM_API void gfmm_dataset_free(gfmm_dataset* ds);
GFMM_API size_t gfmm_dataset_rows(const gfmm_dataset* ds);
GFMM_API size_t gfmm_dataset_features(const gfmm_dataset* ds);
GFMM_API int gfmm_dataset_has_labels(const gfmm_dataset* ds);

/* ------------------------------------------------------------------ */
/* training and models                                                 */

/* Trains on a labeled dataset. Features are min-max scaled internally and
 * the scaler is stored in the model, so prediction takes raw units.
 * algorithm must be GFMM_ALGO_ONLN or GFMM_ALGO_IOL. With shuffle != 0 the
 * presentation order is a seeded permutation, otherwise file order. */
GFMM_API gfmm_status gfmm_train(const gfmm_dataset* ds, gfmm_algorithm algorithm,
                                double theta, double gamma, int shuffle,
                                unsigned long long seed, gfmm_model** out);

GFMM_API void gfmm_model_free(gfmm_model* m);
GFMM_API size_t gfmm_model_boxes(const gfmm_model* m);
GFMM_API size_t gfmm_model_features(const gfmm_model* m);

GFMM_API gfmm_status gfmm_model_save(const gfmm_model* m, const char* path);
GFMM_API gfmm_status gfmm_model_load(const char* path, gfmm_model** out);

/* Original label token for a class id; NULL when the id is unknown. */
GFMM_API const char* gfmm_model_class_name(const gfmm_model* m, int class_id);

/* Predicts every row of ds (label column, if any, is ignored). out_labels
 * must hold gfmm_dataset_rows(ds) ints; seed feeds the random tie-break. */
GFMM_API gfmm_status gfmm_model_predict(const gfmm_model* m, const gfmm_dataset* ds,
                                        gfmm_tie_strategy tie,
                                        unsigned long long seed, int* out_labels);

GFMM_API gfmm_status gfmm_model_predict_row(const gfmm_model* m, const double* row,
                                            size_t cols, gfmm_tie_strategy tie,
                                            unsigned long long seed, int* out_label);

/* Drops boxes whose win record on the validation set falls below threshold;
 * never-winning boxes stay. Returns a new model. */
GFMM_API gfmm_status gfmm_prune(const gfmm_model* m, const gfmm_dataset* validation,
                                double threshold, gfmm_model** out);

/* Writes an SVG rendering; models must have exactly two features. */
GFMM_API gfmm_status gfmm_model_snapshot_svg(const gfmm_model* m, const char* path);

/* ------------------------------------------------------------------ */
/* ensembles                                                           */

/* Trains `members` overlap-avoiding models, each on its own seeded shuffle
 * derived from `seed`. */
GFMM_API gfmm_status gfmm_ensemble_train(const gfmm_dataset* ds, double theta,
                                         double gamma, size_t members,
                                         unsigned long long seed,
                                         gfmm_ensemble** out);

GFMM_API void gfmm_ensemble_free(gfmm_ensemble* e);
GFMM_API size_t gfmm_ensemble_members(const gfmm_ensemble* e);
GFMM_API gfmm_status gfmm_ensemble_save(const gfmm_ensemble* e, const char* path);
GFMM_API gfmm_status gfmm_ensemble_load(const char* path, gfmm_ensemble** out);
GFMM_API const char* gfmm_ensemble_class_name(const gfmm_ensemble* e, int class_id);

/* Majority vote over the members for every row of ds. */
GFMM_API gfmm_status gfmm_ensemble_predict(const gfmm_ensemble* e,
                                           const gfmm_dataset* ds,
                                           gfmm_tie_strategy tie,
                                           unsigned long long seed, int* out_labels);

/* Tells model files from ensemble files. */
GFMM_API gfmm_status gfmm_file_kind(const char* path, int* out_kind);

/* ------------------------------------------------------------------ */
/* evaluation                                                          */

typedef struct gfmm_eval_spec {
  const char* data_path;
  int label_column; /* column index, GFMM_LABEL_COLUMN_LAST, ... */
  int has_header;

  const int* algorithms; /* gfmm_algorithm values */
  size_t algorithm_count;
  const double* thetas;
  size_t theta_count;

  double gamma;
  size_t folds;
  double noise_fraction;
  int pruning;
  double prune_threshold;
  size_t repetitions;
  size_t ensemble_members;
  unsigned long long master_seed;
  int tie_override; /* gfmm_tie_strategy, or -1 for per-algorithm defaults */
} gfmm_eval_spec;

/* Runs the cross product algorithms x thetas x folds x repetitions with
 * stratified folds and writes the metrics CSV to out_csv_path. When
 * out_summary is non-NULL it receives a mean/deviation table per
 * (algorithm, theta); free it with gfmm_free_string. Identical specs write
 * identical CSV bytes apart from the train_seconds column. */
GFMM_API gfmm_status gfmm_evaluate(const gfmm_eval_spec* spec, const char* out_csv_path,
                                   char** out_summary);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GFMM_H */
