#include "fssc/gene_filter.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "fssc/errors.hpp"
#include "fssc/parallel.hpp"
#include "text_util.hpp"

namespace fssc {

DiscreteDistribution DiscreteDistribution::from_counts(std::vector<std::uint64_t> counts) {
  DiscreteDistribution dist;
  dist.total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  dist.counts = std::move(counts);
  if (dist.total == 0) throw ValidationError("distribution total must be >= 1");
  return dist;
}

std::vector<std::size_t> discretize(std::span<const double> values, std::size_t bins,
                                    double lo, double hi) {
  if (bins == 0) throw ValidationError("bins must be positive");
  if (lo > hi) throw ValidationError("invalid discretization range: lo > hi");
  std::vector<std::size_t> out(values.size(), 0);
  if (lo == hi) return out;
  const double width = hi - lo;
  const double top = static_cast<double>(bins - 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double raw = std::floor(static_cast<double>(bins) * (values[i] - lo) / width);
    out[i] = static_cast<std::size_t>(std::clamp(raw, 0.0, top));
  }
  return out;
}

double entropy(const DiscreteDistribution& dist) {
  const auto sum =
      std::accumulate(dist.counts.begin(), dist.counts.end(), std::uint64_t{0});
  if (dist.total == 0 || sum != dist.total) {
    throw ValidationError("distribution counts do not sum to total");
  }
  double h = 0.0;
  const auto total = static_cast<double>(dist.total);
  for (const auto count : dist.counts) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double information_gain(std::span<const double> gene_values,
                        std::span<const std::string> class_labels, std::size_t bins) {
  if (gene_values.size() != class_labels.size()) {
    throw ValidationError("gene values and class labels differ in length");
  }
  if (gene_values.empty()) throw ValidationError("information gain needs at least 1 sample");

  const auto [lo_it, hi_it] = std::minmax_element(gene_values.begin(), gene_values.end());
  const auto gene_bins = discretize(gene_values, bins, *lo_it, *hi_it);

  std::unordered_map<std::string_view, std::size_t> label_index;
  std::vector<std::size_t> label_of(class_labels.size());
  for (std::size_t i = 0; i < class_labels.size(); ++i) {
    const auto [it, inserted] = label_index.try_emplace(class_labels[i], label_index.size());
    label_of[i] = it->second;
  }
  const std::size_t n_labels = label_index.size();

  std::vector<std::uint64_t> joint(bins * n_labels, 0);
  std::vector<std::uint64_t> gene_marginal(bins, 0);
  std::vector<std::uint64_t> label_marginal(n_labels, 0);
  for (std::size_t i = 0; i < gene_values.size(); ++i) {
    joint[gene_bins[i] * n_labels + label_of[i]]++;
    gene_marginal[gene_bins[i]]++;
    label_marginal[label_of[i]]++;
  }

  const double hx = entropy(DiscreteDistribution::from_counts(std::move(gene_marginal)));
  const double hy = entropy(DiscreteDistribution::from_counts(std::move(label_marginal)));
  const double hxy = entropy(DiscreteDistribution::from_counts(std::move(joint)));
  return hx + hy - hxy;
}

GeneRanking rank_genes(const ExpressionDataset& ds, FilterMode mode, std::size_t bins,
                       unsigned threads) {
  if (ds.sample_count() == 0 || ds.gene_count() == 0) {
    throw ValidationError("cannot rank genes of an empty dataset");
  }
  if (bins == 0) throw ValidationError("bins must be positive");

  const std::size_t n = ds.gene_count();
  std::vector<double> scores(n, 0.0);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const auto column = ds.values.column(j);
      if (mode == FilterMode::information_gain) {
        // Plug-in IG can round a hair below zero; ranking scores stay >= 0.
        scores[j] = std::max(0.0, information_gain(column, ds.labels, bins));
      } else {
        const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
        const auto gene_bins = discretize(column, bins, *lo_it, *hi_it);
        std::vector<std::uint64_t> counts(bins, 0);
        for (const auto b : gene_bins) counts[b]++;
        scores[j] = entropy(DiscreteDistribution::from_counts(std::move(counts)));
      }
    }
  });

  GeneRanking ranking;
  ranking.mode = mode;
  ranking.bins = bins;
  ranking.entries.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    ranking.entries.push_back({ds.gene_ids[j], scores[j], j});
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const GeneRanking::Entry& a, const GeneRanking::Entry& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.original_index < b.original_index;
            });
  return ranking;
}

ExpressionDataset select_top_k(const GeneRanking& ranking, std::size_t k,
                               const ExpressionDataset& ds) {
  if (k < 1 || k > ds.gene_count()) {
    throw ValidationError("top-k must lie in [1, " + std::to_string(ds.gene_count()) +
                          "], got " + std::to_string(k));
  }
  if (ranking.entries.size() != ds.gene_count()) {
    throw ValidationError("ranking does not cover the dataset's genes");
  }

  ExpressionDataset out;
  out.sample_ids = ds.sample_ids;
  out.labels = ds.labels;
  out.class_set = ds.class_set;
  out.values = Matrix(ds.sample_count(), k);
  out.gene_ids.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    const auto& entry = ranking.entries[r];
    if (entry.original_index >= ds.gene_count() ||
        ds.gene_ids[entry.original_index] != entry.gene_id) {
      throw ValidationError("ranking entry \"" + entry.gene_id +
                            "\" does not match the dataset's gene order");
    }
    out.gene_ids.push_back(entry.gene_id);
    for (std::size_t i = 0; i < ds.sample_count(); ++i) {
      out.values(i, r) = ds.values(i, entry.original_index);
    }
  }
  return out;
}

void write_ranking_csv(const GeneRanking& ranking, std::ostream& out) {
  out << "gene_id,score,rank\n";
  for (std::size_t r = 0; r < ranking.entries.size(); ++r) {
    out << ranking.entries[r].gene_id << ',' << detail::format_double(ranking.entries[r].score)
        << ',' << (r + 1) << '\n';
  }
}

}  // namespace fssc
