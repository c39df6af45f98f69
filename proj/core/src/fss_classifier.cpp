#include "fssc/fss_classifier.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "fssc/errors.hpp"

#include "json.hpp"

namespace fssc {

namespace {

constexpr const char* kModelFormat = "fss-model";
constexpr int kModelVersion = 1;

void check_grades(std::span<const double> grades, const char* what) {
  for (const double g : grades) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw ValidationError(std::string(what) + " contains a grade outside [0, 1]");
    }
  }
}

}  // namespace

FuzzySoftSetModel fit(const FuzzifiedDataset& train, FuzzificationParams params) {
  const std::size_t m = train.sample_ids.size();
  const std::size_t width = train.parameter_ids.size();
  if (m == 0 || width == 0) throw ValidationError("cannot fit a model on an empty dataset");
  if (train.grades.rows != m || train.grades.cols != width ||
      train.labels.size() != m) {
    throw ValidationError("fuzzified dataset has inconsistent shapes");
  }
  if (train.class_set.empty()) throw ValidationError("training data declares no classes");

  FuzzySoftSetModel model;
  model.class_ids = train.class_set;
  model.parameter_ids = train.parameter_ids;
  model.params = std::move(params);

  std::unordered_map<std::string_view, std::size_t> class_index;
  for (std::size_t c = 0; c < model.class_ids.size(); ++c) {
    class_index[model.class_ids[c]] = c;
  }

  model.centers.assign(model.class_ids.size(), std::vector<double>(width, 0.0));
  model.training_counts.assign(model.class_ids.size(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto it = class_index.find(train.labels[i]);
    if (it == class_index.end()) {
      throw ValidationError("label \"" + train.labels[i] + "\" missing from class_set");
    }
    const auto row = train.grades.row(i);
    check_grades(row, "training sample");
    auto& center = model.centers[it->second];
    for (std::size_t j = 0; j < width; ++j) center[j] += row[j];
    model.training_counts[it->second]++;
  }
  for (std::size_t c = 0; c < model.centers.size(); ++c) {
    if (model.training_counts[c] == 0) {
      throw ValidationError("class \"" + model.class_ids[c] + "\" has no training samples");
    }
    const auto count = static_cast<double>(model.training_counts[c]);
    for (double& g : model.centers[c]) g /= count;
  }
  return model;
}

double similarity(std::span<const double> f, std::span<const double> g) {
  if (f.size() != g.size()) throw ValidationError("similarity needs equal-length vectors");
  if (f.empty()) throw ValidationError("similarity needs at least one parameter");
  check_grades(f, "first vector");
  check_grades(g, "second vector");

  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    diff += std::abs(f[j] - g[j]);
    sum += f[j] + g[j];
  }
  // Zero denominator means both vectors are all-zero, i.e. identical sets.
  if (sum == 0.0) return 1.0;
  return 1.0 - diff / sum;
}

Prediction predict(const FuzzySoftSetModel& model, std::span<const double> sample) {
  if (model.class_ids.empty()) throw ValidationError("model has no classes");
  if (sample.size() != model.parameter_ids.size()) {
    throw ValidationError("sample has " + std::to_string(sample.size()) +
                          " parameters, model expects " +
                          std::to_string(model.parameter_ids.size()));
  }

  Prediction out;
  std::size_t best = 0;
  for (std::size_t c = 0; c < model.class_ids.size(); ++c) {
    const double s = similarity(model.centers[c], sample);
    out.similarities.emplace_back(model.class_ids[c], s);
    if (s > out.similarities[best].second) best = c;
  }
  out.label = model.class_ids[best];
  return out;
}

void save_model(const FuzzySoftSetModel& model, std::ostream& out) {
  nlohmann::json doc;
  doc["format"] = kModelFormat;
  doc["version"] = kModelVersion;
  doc["class_ids"] = model.class_ids;
  doc["parameter_ids"] = model.parameter_ids;
  doc["centers"] = model.centers;
  doc["training_counts"] = model.training_counts;
  nlohmann::json genes = nlohmann::json::array();
  for (const auto& b : model.params.genes()) {
    genes.push_back({{"gene", b.gene_id}, {"a", b.lo}, {"b", b.hi}});
  }
  doc["fuzzification_params"] = {{"fitted_on", model.params.fitted_on}, {"genes", genes}};
  out << doc.dump(2) << '\n';
}

void save_model_file(const FuzzySoftSetModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  save_model(model, out);
  out.flush();
  if (!out) throw IoError("failed writing \"" + path + "\"");
}

FuzzySoftSetModel load_model(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model document: ") + e.what());
  }

  try {
    if (!doc.is_object() || doc.value("format", "") != kModelFormat) {
      throw ValidationError("not a " + std::string(kModelFormat) + " document");
    }
    if (!doc.contains("version") || !doc["version"].is_number_integer() ||
        doc["version"].get<int>() != kModelVersion) {
      throw ValidationError("unsupported model version (expected " +
                            std::to_string(kModelVersion) + ")");
    }

    FuzzySoftSetModel model;
    model.class_ids = doc.at("class_ids").get<std::vector<std::string>>();
    model.parameter_ids = doc.at("parameter_ids").get<std::vector<std::string>>();
    model.centers = doc.at("centers").get<std::vector<std::vector<double>>>();
    model.training_counts = doc.at("training_counts").get<std::vector<std::size_t>>();
    const auto& fp = doc.at("fuzzification_params");
    model.params.fitted_on = fp.at("fitted_on").get<std::size_t>();
    for (const auto& gene : fp.at("genes")) {
      model.params.add(gene.at("gene").get<std::string>(), gene.at("a").get<double>(),
                       gene.at("b").get<double>());
    }

    if (model.class_ids.empty()) throw ValidationError("model document declares no classes");
    if (model.centers.size() != model.class_ids.size() ||
        model.training_counts.size() != model.class_ids.size()) {
      throw ValidationError("model document has inconsistent per-class arrays");
    }
    for (const auto& center : model.centers) {
      if (center.size() != model.parameter_ids.size()) {
        throw ValidationError("model center width does not match parameter_ids");
      }
      check_grades(center, "model center");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed model document: ") + e.what());
  }
}

FuzzySoftSetModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open \"" + path + "\" for reading");
  return load_model(in);
}

}  // namespace fssc
