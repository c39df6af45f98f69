#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fssc/dataset.hpp"
#include "fssc/matrix.hpp"

namespace fssc {

struct GeneBounds {
  std::string gene_id;
  double lo = 0.0;  // membership support a
  double hi = 0.0;  // membership support b, lo <= hi

  bool operator==(const GeneBounds&) const = default;
};

// Per-gene (a, b) support bounds for the S/Z membership functions, fitted as
// the training min/max of each gene.
class FuzzificationParams {
 public:
  void add(std::string gene_id, double lo, double hi);
  const GeneBounds* find(std::string_view gene_id) const;

  const std::vector<GeneBounds>& genes() const { return genes_; }
  std::size_t size() const { return genes_.size(); }

  std::size_t fitted_on = 0;  // training sample count

  bool operator==(const FuzzificationParams& other) const {
    return genes_ == other.genes_ && fitted_on == other.fitted_on;
  }

 private:
  std::vector<GeneBounds> genes_;
  std::unordered_map<std::string, std::size_t> index_;
};

// S-shaped membership: 0 at and below a, piecewise-quadratic rise, 1 at and
// above b. A degenerate support (a == b) reports maximal uncertainty, 0.5.
double smf(double x, double a, double b);

// Complement of smf; smf(x) + zmf(x) == 1 for every x.
double zmf(double x, double a, double b);

// Samples in membership-grade space: two parameters per selected gene,
// interleaved as S:<gene>, Z:<gene>. Every grade lies in [0, 1] and each S/Z
// pair sums to 1.
struct FuzzifiedDataset {
  std::vector<std::string> sample_ids;
  std::vector<std::string> parameter_ids;  // 2n
  Matrix grades;                           // m x 2n
  std::vector<std::string> labels;
  std::vector<std::string> class_set;
};

FuzzificationParams fit_params(const ExpressionDataset& train);

// Maps every expression value through the fitted S/Z pair for its gene.
// Values outside the training support saturate to grade 0/1. Every gene of ds
// must be covered by params.
FuzzifiedDataset transform(const ExpressionDataset& ds, const FuzzificationParams& params);

}  // namespace fssc
