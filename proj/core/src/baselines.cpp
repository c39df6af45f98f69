#include "fssc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "fssc/errors.hpp"

namespace fssc {

namespace {

constexpr double kMinDistance = 1e-12;  // keeps 1/d^p finite at zero distance

std::unordered_map<std::string_view, std::size_t> class_index_of(
    const BaselineTrainingSet& train) {
  if (train.class_set.empty()) throw ValidationError("training set declares no classes");
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t c = 0; c < train.class_set.size(); ++c) index[train.class_set[c]] = c;
  for (const auto& label : train.labels) {
    if (!index.contains(label)) {
      throw ValidationError("label \"" + label + "\" missing from class_set");
    }
  }
  return index;
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

NeighborSet nearest_neighbors(const BaselineTrainingSet& train,
                              std::span<const double> query, std::size_t k) {
  const std::size_t m = train.features.rows;
  if (train.labels.size() != m) {
    throw ValidationError("training labels do not match feature rows");
  }
  if (k == 0 || k > m) {
    throw ValidationError("K must lie in [1, " + std::to_string(m) + "], got " +
                          std::to_string(k));
  }
  if (query.size() != train.features.cols) {
    throw ValidationError("query has " + std::to_string(query.size()) +
                          " features, training data has " +
                          std::to_string(train.features.cols));
  }

  std::vector<std::pair<double, std::size_t>> distances(m);
  for (std::size_t i = 0; i < m; ++i) {
    distances[i] = {euclidean(train.features.row(i), query), i};
  }
  std::partial_sort(distances.begin(), distances.begin() + k, distances.end());

  NeighborSet out;
  out.neighbors.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.neighbors.push_back({distances[i].second, distances[i].first,
                             train.labels[distances[i].second]});
  }
  return out;
}

std::string knn_predict(const BaselineTrainingSet& train, std::span<const double> query,
                        std::size_t k) {
  const auto class_index = class_index_of(train);
  const auto nn = nearest_neighbors(train, query, k);

  std::vector<std::size_t> votes(train.class_set.size(), 0);
  std::vector<double> cumulative(train.class_set.size(), 0.0);
  for (const auto& n : nn.neighbors) {
    const std::size_t c = class_index.at(n.label);
    votes[c]++;
    cumulative[c] += n.distance;
  }

  std::size_t best = train.class_set.size();
  for (std::size_t c = 0; c < train.class_set.size(); ++c) {
    if (votes[c] == 0) continue;
    if (best == train.class_set.size() || votes[c] > votes[best] ||
        (votes[c] == votes[best] && cumulative[c] < cumulative[best])) {
      best = c;
    }
  }
  return train.class_set[best];
}

MembershipVector fknn_memberships(const BaselineTrainingSet& train,
                                  std::span<const double> query, std::size_t k,
                                  double fuzzifier) {
  if (!(fuzzifier > 1.0)) throw ValidationError("fuzzifier m must be > 1");
  const auto class_index = class_index_of(train);
  const auto nn = nearest_neighbors(train, query, k);

  const double exponent = 2.0 / (fuzzifier - 1.0);
  std::vector<double> weighted(train.class_set.size(), 0.0);
  double total = 0.0;
  for (const auto& n : nn.neighbors) {
    const double d = std::max(n.distance, kMinDistance);
    const double w = 1.0 / std::pow(d, exponent);
    weighted[class_index.at(n.label)] += w;
    total += w;
  }

  MembershipVector out;
  out.class_ids = train.class_set;
  out.grades.resize(train.class_set.size());
  for (std::size_t c = 0; c < weighted.size(); ++c) out.grades[c] = weighted[c] / total;
  return out;
}

std::string fknn_predict(const BaselineTrainingSet& train, std::span<const double> query,
                         std::size_t k, double fuzzifier) {
  const auto memberships = fknn_memberships(train, query, k, fuzzifier);
  std::size_t best = 0;
  for (std::size_t c = 1; c < memberships.grades.size(); ++c) {
    if (memberships.grades[c] > memberships.grades[best]) best = c;
  }
  return memberships.class_ids[best];
}

Matrix minmax_scale(const Matrix& values, std::span<const GeneBounds> bounds) {
  if (bounds.size() != values.cols) {
    throw ValidationError("scaling bounds do not match the matrix columns");
  }
  Matrix out(values.rows, values.cols);
  for (std::size_t j = 0; j < values.cols; ++j) {
    const double lo = bounds[j].lo;
    const double hi = bounds[j].hi;
    for (std::size_t i = 0; i < values.rows; ++i) {
      out(i, j) = lo == hi ? 0.5
                           : std::clamp((values(i, j) - lo) / (hi - lo), 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace fssc
