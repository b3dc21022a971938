#pragma once

#include <string>

#include "gfmm/refine.hpp"
#include "gfmm/types.hpp"

namespace gfmm {

// What a saved file contains.
enum class ModelFileKind { model, ensemble };

// Versioned, human-readable JSON serialization. Numbers round-trip exactly
// (shortest representation that parses back to the same double), so
// save -> load -> save is byte-identical.
std::string model_to_text(const TrainedModel& model);
TrainedModel model_from_text(const std::string& text);

std::string ensemble_to_text(const EnsembleModel& ensemble);
EnsembleModel ensemble_from_text(const std::string& text);

void save_model(const TrainedModel& model, const std::string& path);
// Throws DataError on unreadable/corrupt files and FormatVersionError when
// the file declares a newer format version than this build understands.
TrainedModel load_model(const std::string& path);

void save_ensemble(const EnsembleModel& ensemble, const std::string& path);
EnsembleModel load_ensemble(const std::string& path);

// Peeks at a saved file to tell models from ensembles (for tools that
// accept either).
ModelFileKind sniff_model_file(const std::string& path);

}  // namespace gfmm
