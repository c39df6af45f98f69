#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fssc/dataset.hpp"

namespace fssc {

// Empirical count distribution over bins/symbols. total is always the sum of
// counts and at least 1.
struct DiscreteDistribution {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  static DiscreteDistribution from_counts(std::vector<std::uint64_t> counts);
};

enum class FilterMode { information_gain, entropy };

// Genes ordered by score descending; ties keep the original gene order.
struct GeneRanking {
  struct Entry {
    std::string gene_id;
    double score = 0.0;
    std::size_t original_index = 0;
  };
  std::vector<Entry> entries;
  FilterMode mode = FilterMode::information_gain;
  std::size_t bins = 0;
};

// Equal-width binning over [lo, hi]: value v maps to floor(bins*(v-lo)/(hi-lo))
// clamped to [0, bins-1]. lo == hi sends everything to bin 0; out-of-range
// values clamp to the nearest edge bin.
std::vector<std::size_t> discretize(std::span<const double> values, std::size_t bins,
                                    double lo, double hi);

// Shannon entropy in bits.
double entropy(const DiscreteDistribution& dist);

// H(X) + H(Y) - H(X,Y) in bits, from plug-in counts. The gene is binned over
// its own (min, max); labels are used as-is.
double information_gain(std::span<const double> gene_values,
                        std::span<const std::string> class_labels, std::size_t bins);

// Scores every gene against the class label (information_gain mode) or by the
// entropy of its own discretized distribution (entropy mode). threads == 0
// uses all available cores; the result does not depend on the thread count.
GeneRanking rank_genes(const ExpressionDataset& ds, FilterMode mode, std::size_t bins,
                       unsigned threads = 0);

// Dataset restricted to the k best-ranked genes, columns in ranking order.
ExpressionDataset select_top_k(const GeneRanking& ranking, std::size_t k,
                               const ExpressionDataset& ds);

// Columns: gene_id, score, rank (1-based).
void write_ranking_csv(const GeneRanking& ranking, std::ostream& out);

}  // namespace fssc
