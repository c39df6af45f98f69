#pragma once

#include <span>
#include <string>
#include <vector>

#include "fssc/fuzzifier.hpp"
#include "fssc/matrix.hpp"

namespace fssc {

// Training side of the KNN baselines: feature rows (typically min-max scaled
// to [0,1]), their labels, and the class order used to break ties.
struct BaselineTrainingSet {
  Matrix features;  // m x d
  std::vector<std::string> labels;
  std::vector<std::string> class_set;
};

struct Neighbor {
  std::size_t train_index = 0;
  double distance = 0.0;
  std::string label;
};

// The K nearest training points by Euclidean distance, sorted by distance
// ascending with ties broken by training index.
struct NeighborSet {
  std::vector<Neighbor> neighbors;
};

NeighborSet nearest_neighbors(const BaselineTrainingSet& train,
                              std::span<const double> query, std::size_t k);

// Majority vote among the K nearest neighbors; vote ties prefer the class
// with the smaller cumulative neighbor distance, then class_set order.
std::string knn_predict(const BaselineTrainingSet& train, std::span<const double> query,
                        std::size_t k);

struct MembershipVector {
  std::vector<std::string> class_ids;
  std::vector<double> grades;  // sums to 1
};

// Distance-weighted class memberships over the K nearest neighbors with crisp
// neighbor labels: u_c = sum_j 1[label_j = c] * w_j / sum_j w_j where
// w_j = 1 / d_j^(2/(m-1)) and d_j is clamped below at 1e-12. m > 1.
MembershipVector fknn_memberships(const BaselineTrainingSet& train,
                                  std::span<const double> query, std::size_t k,
                                  double fuzzifier);

// Argmax of fknn_memberships; ties resolve to the earliest class.
std::string fknn_predict(const BaselineTrainingSet& train, std::span<const double> query,
                         std::size_t k, double fuzzifier);

// Per-column linear rescale to [0,1] using the given training bounds, in
// column order. Degenerate bounds (lo == hi) map to 0.5; out-of-range values
// clamp. This is the baselines' view of the same genes the FSS classifier
// sees fuzzified.
Matrix minmax_scale(const Matrix& values, std::span<const GeneBounds> bounds);

}  // namespace fssc
