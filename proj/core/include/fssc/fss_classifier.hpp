#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fssc/fuzzifier.hpp"

namespace fssc {

// Per-class cluster centers over the fuzzified parameter space, plus the
// fitted fuzzification bounds needed to map raw samples into that space.
struct FuzzySoftSetModel {
  std::vector<std::string> class_ids;          // distinct, first-appearance order
  std::vector<std::vector<double>> centers;    // one grade vector per class
  std::vector<std::string> parameter_ids;      // shared length of all centers
  FuzzificationParams params;
  std::vector<std::size_t> training_counts;    // per-class sample counts

  bool operator==(const FuzzySoftSetModel&) const = default;
};

// Centers are the arithmetic mean of each class's fuzzified training vectors.
// The bounds that produced the grades may be passed along so the model can
// later map raw samples itself.
FuzzySoftSetModel fit(const FuzzifiedDataset& train, FuzzificationParams params = {});

// 1 - sum|f - g| / sum(f + g) over grade vectors in [0,1]^d; symmetric, in
// [0, 1], exactly 1 for identical vectors. Two all-zero vectors compare as
// identical (similarity 1).
double similarity(std::span<const double> f, std::span<const double> g);

struct Prediction {
  std::string label;
  std::vector<std::pair<std::string, double>> similarities;  // class order
};

// Argmax of per-class similarity; ties resolve to the earliest class id. The
// full similarity map is returned for reporting.
Prediction predict(const FuzzySoftSetModel& model, std::span<const double> sample);

// Versioned JSON document; grades survive a save/load round trip bit-exactly.
void save_model(const FuzzySoftSetModel& model, std::ostream& out);
void save_model_file(const FuzzySoftSetModel& model, const std::string& path);
FuzzySoftSetModel load_model(std::istream& in);
FuzzySoftSetModel load_model_file(const std::string& path);

}  // namespace fssc
