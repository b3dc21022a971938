#include "gfmm/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gfmm {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;
constexpr const char* kModelTag = "gfmm-model";
constexpr const char* kEnsembleTag = "gfmm-ensemble";

json model_to_json(const TrainedModel& model) {
  json boxes = json::array();
  for (const Hyperbox& b : model.boxes) {
    boxes.push_back({{"v", b.v}, {"w", b.w}, {"label", b.label}, {"n", b.cardinality}});
  }
  json classes = json::array();
  for (int c : model.class_catalog) {
    classes.push_back({{"id", c}, {"name", model.class_name(c)}});
  }
  return json{
      {"format", kModelTag},
      {"version", kFormatVersion},
      {"params", {{"theta", model.params.theta}, {"gamma", model.params.gamma}}},
      {"scaler",
       {{"min", model.scaler.feature_min()}, {"max", model.scaler.feature_max()}}},
      {"classes", classes},
      {"boxes", boxes},
  };
}

void check_header(const json& j, const char* expected_tag) {
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string())
    throw DataError("not a recognisable model file");
  const std::string tag = j["format"].get<std::string>();
  if (tag != kModelTag && tag != kEnsembleTag)
    throw DataError("not a recognisable model file");
  if (tag != expected_tag)
    throw DataError(std::string("expected a ") + expected_tag + " file, found " + tag);
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw DataError("model file lacks a version");
  const int version = j["version"].get<int>();
  if (version > kFormatVersion)
    throw FormatVersionError("model file uses format version " +
                             std::to_string(version) + "; this build reads up to " +
                             std::to_string(kFormatVersion));
}

TrainedModel model_from_json(const json& j) {
  check_header(j, kModelTag);
  try {
    TrainedModel model;
    model.params.theta = j.at("params").at("theta").get<double>();
    model.params.gamma = j.at("params").at("gamma").get<std::vector<double>>();
    model.scaler = FeatureScaler::from_bounds(
        j.at("scaler").at("min").get<std::vector<double>>(),
        j.at("scaler").at("max").get<std::vector<double>>());
    for (const json& c : j.at("classes")) {
      const int id = c.at("id").get<int>();
      model.class_catalog.insert(id);
      model.class_names.emplace(id, c.at("name").get<std::string>());
    }
    for (const json& bj : j.at("boxes")) {
      Hyperbox b;
      b.v = bj.at("v").get<std::vector<double>>();
      b.w = bj.at("w").get<std::vector<double>>();
      b.label = bj.at("label").get<int>();
      b.cardinality = bj.at("n").get<std::uint64_t>();
      if (b.v.size() != b.w.size() || b.v.size() != model.params.gamma.size())
        throw DataError("box width disagrees with the model parameters");
      for (std::size_t d = 0; d < b.v.size(); ++d)
        if (!(b.v[d] <= b.w[d])) throw DataError("box with min corner above max");
      if (b.cardinality < 1) throw DataError("box with zero cardinality");
      if (b.label != kUnlabeled && !model.class_catalog.count(b.label))
        throw DataError("box labeled with a class missing from the catalog");
      model.boxes.push_back(std::move(b));
    }
    model.params.validate(model.params.gamma.size());
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
}

json ensemble_to_json(const EnsembleModel& ensemble) {
  json members = json::array();
  for (const TrainedModel& m : ensemble.members) members.push_back(model_to_json(m));
  return json{
      {"format", kEnsembleTag},
      {"version", kFormatVersion},
      {"seeds", ensemble.seeds},
      {"members", members},
  };
}

EnsembleModel ensemble_from_json(const json& j) {
  check_header(j, kEnsembleTag);
  try {
    EnsembleModel ensemble;
    ensemble.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const json& mj : j.at("members")) ensemble.members.push_back(model_from_json(mj));
    if (ensemble.members.empty()) throw DataError("ensemble file holds no members");
    return ensemble;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed ensemble file: ") + e.what());
  }
}

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw DataError("not valid JSON");
  return j;
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_text(buffer.str());
  } catch (const DataError&) {
    throw DataError("'" + path + "' is not valid JSON");
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << text;
  if (!out) throw DataError("failed while writing '" + path + "'");
}

}  // namespace

std::string model_to_text(const TrainedModel& model) {
  return model_to_json(model).dump(2) + "\n";
}

TrainedModel model_from_text(const std::string& text) {
  return model_from_json(parse_text(text));
}

std::string ensemble_to_text(const EnsembleModel& ensemble) {
  return ensemble_to_json(ensemble).dump(2) + "\n";
}

EnsembleModel ensemble_from_text(const std::string& text) {
  return ensemble_from_json(parse_text(text));
}

void save_model(const TrainedModel& model, const std::string& path) {
  write_file(path, model_to_text(model));
}

TrainedModel load_model(const std::string& path) {
  return model_from_json(read_file(path));
}

void save_ensemble(const EnsembleModel& ensemble, const std::string& path) {
  write_file(path, ensemble_to_text(ensemble));
}

EnsembleModel load_ensemble(const std::string& path) {
  return ensemble_from_json(read_file(path));
}

ModelFileKind sniff_model_file(const std::string& path) {
  const json j = read_file(path);
  if (j.is_object() && j.contains("format") && j["format"].is_string()) {
    const std::string tag = j["format"].get<std::string>();
    if (tag == kModelTag) return ModelFileKind::model;
    if (tag == kEnsembleTag) return ModelFileKind::ensemble;
  }
  throw DataError("'" + path + "' is not a recognisable model file");
}

}  // namespace gfmm
