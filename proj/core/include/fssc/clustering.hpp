#pragma once

#include <string>

#include "fssc/dataset.hpp"

namespace fssc {

enum class Linkage { complete, average, single };
enum class ClusterMetric { euclidean, correlation };

// Agglomerative clustering over genes (columns), samples as coordinates.
// Merge order is deterministic: the closest pair wins, ties go to the
// smallest (id, id) pair, where leaves are numbered 0..n-1 in gene order and
// each merge takes the next id. Returns a Newick tree; an internal node
// merged at distance d sits at height d/2 and branch lengths are height
// differences, so the two leaves of a lone pair carry half their distance.
std::string hcluster_dendrogram(const ExpressionDataset& ds, Linkage linkage,
                                ClusterMetric metric);

}  // namespace fssc
