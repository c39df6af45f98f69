#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fssc/clustering.hpp"
#include "fssc/errors.hpp"
#include "text_util.hpp"

namespace fssc {

namespace {

// Condensed upper-triangular index for slots i < j out of n.
std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

double correlation_distance(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = x.size();
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(m);
  mean_y /= static_cast<double>(m);
  double cov = 0.0, var_x = 0.0, var_y = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  // Constant genes have no defined correlation; treat them as uncorrelated.
  if (var_x == 0.0 || var_y == 0.0) return 1.0;
  const double r = std::clamp(cov / std::sqrt(var_x * var_y), -1.0, 1.0);
  return 1.0 - r;
}

double euclidean_distance(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

bool needs_quoting(const std::string& name) {
  if (name.empty()) return true;
  return name.find_first_of(" \t'():;,[]") != std::string::npos;
}

std::string newick_name(const std::string& name) {
  if (!needs_quoting(name)) return name;
  std::string quoted = "'";
  for (const char c : name) {
    quoted += c;
    if (c == '\'') quoted += '\'';
  }
  quoted += '\'';
  return quoted;
}

struct MergeNode {
  std::size_t left = 0;   // cluster ids; < n means leaf
  std::size_t right = 0;
  double height = 0.0;
};

// Lexicographic (distance, min id, max id) key for the global-minimum scan.
struct PairKey {
  double distance = std::numeric_limits<double>::infinity();
  std::size_t lo_id = 0;
  std::size_t hi_id = 0;

  bool operator<(const PairKey& other) const {
    if (distance != other.distance) return distance < other.distance;
    if (lo_id != other.lo_id) return lo_id < other.lo_id;
    return hi_id < other.hi_id;
  }
};

}  // namespace

std::string hcluster_dendrogram(const ExpressionDataset& ds, Linkage linkage,
                                ClusterMetric metric) {
  const std::size_t n = ds.gene_count();
  if (n < 2) throw ValidationError("dendrogram needs at least 2 genes");

  std::vector<std::vector<double>> columns(n);
  for (std::size_t j = 0; j < n; ++j) columns[j] = ds.values.column(j);

  std::vector<double> dist(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      dist[pair_index(i, j, n)] = metric == ClusterMetric::euclidean
                                      ? euclidean_distance(columns[i], columns[j])
                                      : correlation_distance(columns[i], columns[j]);
    }
  }

  std::vector<bool> active(n, true);
  std::vector<std::size_t> cluster_id(n);   // per slot
  std::vector<std::size_t> cluster_size(n, 1);
  for (std::size_t s = 0; s < n; ++s) cluster_id[s] = s;

  auto key_of = [&](std::size_t a, std::size_t b) {
    PairKey key;
    key.distance = dist[pair_index(std::min(a, b), std::max(a, b), n)];
    key.lo_id = std::min(cluster_id[a], cluster_id[b]);
    key.hi_id = std::max(cluster_id[a], cluster_id[b]);
    return key;
  };

  // Cached best partner per slot; refreshed lazily after merges.
  std::vector<std::size_t> best_partner(n);
  std::vector<PairKey> best_key(n);
  auto rescan = [&](std::size_t s) {
    best_key[s] = PairKey{};
    best_partner[s] = s;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s || !active[t]) continue;
      const auto key = key_of(s, t);
      if (key < best_key[s]) {
        best_key[s] = key;
        best_partner[s] = t;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) rescan(s);

  std::vector<MergeNode> nodes;
  nodes.reserve(n - 1);

  for (std::size_t step = 0; step + 1 < n; ++step) {
    PairKey winner;
    std::size_t slot_a = n, slot_b = n;
    for (std::size_t s = 0; s < n; ++s) {
      if (!active[s] || best_partner[s] == s) continue;
      if (best_key[s] < winner) {
        winner = best_key[s];
        slot_a = s;
        slot_b = best_partner[s];
      }
    }
    if (slot_a > slot_b) std::swap(slot_a, slot_b);

    nodes.push_back({std::min(cluster_id[slot_a], cluster_id[slot_b]),
                     std::max(cluster_id[slot_a], cluster_id[slot_b]),
                     winner.distance / 2.0});

    // Lance-Williams update into slot_a; slot_b dies.
    const double size_a = static_cast<double>(cluster_size[slot_a]);
    const double size_b = static_cast<double>(cluster_size[slot_b]);
    for (std::size_t t = 0; t < n; ++t) {
      if (!active[t] || t == slot_a || t == slot_b) continue;
      const double d_at = dist[pair_index(std::min(slot_a, t), std::max(slot_a, t), n)];
      const double d_bt = dist[pair_index(std::min(slot_b, t), std::max(slot_b, t), n)];
      double merged = 0.0;
      switch (linkage) {
        case Linkage::single: merged = std::min(d_at, d_bt); break;
        case Linkage::complete: merged = std::max(d_at, d_bt); break;
        case Linkage::average: merged = (size_a * d_at + size_b * d_bt) / (size_a + size_b); break;
      }
      dist[pair_index(std::min(slot_a, t), std::max(slot_a, t), n)] = merged;
    }
    active[slot_b] = false;
    cluster_size[slot_a] += cluster_size[slot_b];
    cluster_id[slot_a] = n + step;

    rescan(slot_a);
    for (std::size_t t = 0; t < n; ++t) {
      if (!active[t] || t == slot_a) continue;
      if (best_partner[t] == slot_a || best_partner[t] == slot_b) {
        rescan(t);
      } else if (const auto key = key_of(t, slot_a); key < best_key[t]) {
        best_key[t] = key;
        best_partner[t] = slot_a;
      }
    }
  }

  // Serialize without recursion; gene trees can be deep chains.
  const std::size_t root = 2 * n - 2;
  auto height_of = [&](std::size_t id) { return id < n ? 0.0 : nodes[id - n].height; };

  std::string out;
  struct Frame {
    std::size_t id;
    double branch_length;  // edge up to the parent; unused for the root
    int stage;             // 0 = open, 1 = between children, 2 = close
  };
  std::vector<Frame> stack{{root, 0.0, 0}};
  while (!stack.empty()) {
    auto& frame = stack.back();
    if (frame.id < n) {
      out += newick_name(ds.gene_ids[frame.id]);
      out += ':';
      out += detail::format_double(frame.branch_length);
      stack.pop_back();
      continue;
    }
    const auto& node = nodes[frame.id - n];
    if (frame.stage == 0) {
      out += '(';
      frame.stage = 1;
      stack.push_back({node.left, node.height - height_of(node.left), 0});
    } else if (frame.stage == 1) {
      out += ',';
      frame.stage = 2;
      stack.push_back({node.right, node.height - height_of(node.right), 0});
    } else {
      out += ')';
      if (frame.id != root) {
        out += ':';
        out += detail::format_double(frame.branch_length);
      }
      stack.pop_back();
    }
  }
  out += ';';
  return out;
}

}  // namespace fssc
