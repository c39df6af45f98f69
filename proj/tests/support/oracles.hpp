#pragma once

// Brute-force reference implementations used to cross-check the library.
// Everything here is written as straight-line textbook code, independent of
// the implementation under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline double entropy_of_counts(const std::map<long long, long long>& counts) {
  long long total = 0;
  for (const auto& [sym, count] : counts) total += count;
  double h = 0.0;
  for (const auto& [sym, count] : counts) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / static_cast<double>(total);
    h -= p * std::log(p) / std::log(2.0);
  }
  return h;
}

inline long long bin_of(double v, std::size_t bins, double lo, double hi) {
  if (lo == hi) return 0;
  const double raw = std::floor(static_cast<double>(bins) * (v - lo) / (hi - lo));
  if (raw < 0.0) return 0;
  if (raw > static_cast<double>(bins - 1)) return static_cast<long long>(bins - 1);
  return static_cast<long long>(raw);
}

struct EntropyTriple {
  double hx = 0.0;
  double hy = 0.0;
  double hxy = 0.0;
  double ig() const { return hx + hy - hxy; }
};

inline EntropyTriple information_gain(const std::vector<double>& gene,
                                      const std::vector<std::string>& labels,
                                      std::size_t bins) {
  const double lo = *std::min_element(gene.begin(), gene.end());
  const double hi = *std::max_element(gene.begin(), gene.end());

  std::map<std::string, long long> label_symbol;
  std::map<long long, long long> x_counts;
  std::map<long long, long long> y_counts;
  std::map<std::pair<long long, long long>, long long> joint_counts;
  for (std::size_t i = 0; i < gene.size(); ++i) {
    const long long xb = bin_of(gene[i], bins, lo, hi);
    const auto [it, inserted] =
        label_symbol.try_emplace(labels[i], static_cast<long long>(label_symbol.size()));
    const long long yb = it->second;
    x_counts[xb]++;
    y_counts[yb]++;
    joint_counts[{xb, yb}]++;
  }
  EntropyTriple t;
  t.hx = entropy_of_counts(x_counts);
  t.hy = entropy_of_counts(y_counts);
  double total = 0.0;
  for (const auto& [cell, count] : joint_counts) total += static_cast<double>(count);
  for (const auto& [cell, count] : joint_counts) {
    const double p = static_cast<double>(count) / total;
    t.hxy -= p * std::log(p) / std::log(2.0);
  }
  return t;
}

// Eq-by-eq re-implementation of the fuzzy-soft-set classifier: per-class mean
// centers, 1 - sum|diff|/sum(sum) similarity, first-wins argmax.
struct FssOracle {
  std::vector<std::string> class_ids;
  std::vector<std::vector<double>> centers;

  void fit(const std::vector<std::vector<double>>& rows,
           const std::vector<std::string>& labels) {
    class_ids.clear();
    centers.clear();
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::size_t c = 0;
      for (; c < class_ids.size(); ++c) {
        if (class_ids[c] == labels[i]) break;
      }
      if (c == class_ids.size()) {
        class_ids.push_back(labels[i]);
        centers.emplace_back(rows[i].size(), 0.0);
        counts.push_back(0);
      }
      for (std::size_t j = 0; j < rows[i].size(); ++j) centers[c][j] += rows[i][j];
      counts[c]++;
    }
    for (std::size_t c = 0; c < centers.size(); ++c) {
      for (double& v : centers[c]) v /= static_cast<double>(counts[c]);
    }
  }

  static double similarity(const std::vector<double>& f, const std::vector<double>& g) {
    double diff = 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      diff += std::fabs(f[j] - g[j]);
      sum += f[j] + g[j];
    }
    if (sum == 0.0) return 1.0;
    return 1.0 - diff / sum;
  }

  std::string predict(const std::vector<double>& sample) const {
    std::size_t best = 0;
    double best_sim = similarity(centers[0], sample);
    for (std::size_t c = 1; c < centers.size(); ++c) {
      const double s = similarity(centers[c], sample);
      if (s > best_sim) {
        best_sim = s;
        best = c;
      }
    }
    return class_ids[best];
  }
};

inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

// Exhaustive KNN: full sort of (distance, index), majority vote, ties by
// smaller cumulative distance then class first-appearance order.
inline std::string knn(const std::vector<std::vector<double>>& train,
                       const std::vector<std::string>& labels,
                       const std::vector<std::string>& class_order,
                       const std::vector<double>& query, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < train.size(); ++i) order.emplace_back(euclidean(train[i], query), i);
  std::sort(order.begin(), order.end());

  std::map<std::string, std::size_t> votes;
  std::map<std::string, double> cumulative;
  for (std::size_t i = 0; i < k; ++i) {
    votes[labels[order[i].second]]++;
    cumulative[labels[order[i].second]] += order[i].first;
  }
  std::string best;
  for (const auto& cls : class_order) {
    if (!votes.count(cls)) continue;
    if (best.empty() || votes[cls] > votes[best] ||
        (votes[cls] == votes[best] && cumulative[cls] < cumulative[best])) {
      best = cls;
    }
  }
  return best;
}

inline std::map<std::string, double> fknn_memberships(
    const std::vector<std::vector<double>>& train, const std::vector<std::string>& labels,
    const std::vector<double>& query, std::size_t k, double m) {
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < train.size(); ++i) order.emplace_back(euclidean(train[i], query), i);
  std::sort(order.begin(), order.end());

  std::map<std::string, double> weighted;
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double d = std::max(order[i].first, 1e-12);
    const double w = 1.0 / std::pow(d, 2.0 / (m - 1.0));
    weighted[labels[order[i].second]] += w;
    total += w;
  }
  for (auto& [cls, u] : weighted) u /= total;
  return weighted;
}

}  // namespace oracle
