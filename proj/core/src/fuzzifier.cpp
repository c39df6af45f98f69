#include "fssc/fuzzifier.hpp"

#include <algorithm>
#include <cmath>

#include "fssc/errors.hpp"

namespace fssc {

void FuzzificationParams::add(std::string gene_id, double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ValidationError("membership bounds for gene \"" + gene_id + "\" must be finite");
  }
  if (lo > hi) {
    throw ValidationError("membership bounds for gene \"" + gene_id + "\" have lo > hi");
  }
  if (index_.contains(gene_id)) {
    throw ValidationError("duplicate fuzzification bounds for gene \"" + gene_id + "\"");
  }
  index_.emplace(gene_id, genes_.size());
  genes_.push_back({std::move(gene_id), lo, hi});
}

const GeneBounds* FuzzificationParams::find(std::string_view gene_id) const {
  const auto it = index_.find(std::string(gene_id));
  return it == index_.end() ? nullptr : &genes_[it->second];
}

double smf(double x, double a, double b) {
  if (a > b) throw ValidationError("smf requires a <= b");
  if (a == b) return 0.5;
  if (x <= a) return 0.0;
  if (x >= b) return 1.0;
  const double t = (x - a) / (b - a);
  if (x <= (a + b) / 2.0) return 2.0 * t * t;
  const double u = (x - b) / (b - a);
  return 1.0 - 2.0 * u * u;
}

double zmf(double x, double a, double b) { return 1.0 - smf(x, a, b); }

FuzzificationParams fit_params(const ExpressionDataset& train) {
  if (train.sample_count() == 0 || train.gene_count() == 0) {
    throw ValidationError("cannot fit fuzzification params on an empty dataset");
  }
  FuzzificationParams params;
  params.fitted_on = train.sample_count();
  for (std::size_t j = 0; j < train.gene_count(); ++j) {
    double lo = train.values(0, j);
    double hi = lo;
    for (std::size_t i = 1; i < train.sample_count(); ++i) {
      lo = std::min(lo, train.values(i, j));
      hi = std::max(hi, train.values(i, j));
    }
    params.add(train.gene_ids[j], lo, hi);
  }
  return params;
}

FuzzifiedDataset transform(const ExpressionDataset& ds, const FuzzificationParams& params) {
  FuzzifiedDataset out;
  out.sample_ids = ds.sample_ids;
  out.labels = ds.labels;
  out.class_set = ds.class_set;

  const std::size_t n = ds.gene_count();
  std::vector<const GeneBounds*> bounds(n);
  out.parameter_ids.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    bounds[j] = params.find(ds.gene_ids[j]);
    if (bounds[j] == nullptr) {
      throw ValidationError("gene \"" + ds.gene_ids[j] +
                            "\" has no fitted fuzzification bounds");
    }
    out.parameter_ids.push_back("S:" + ds.gene_ids[j]);
    out.parameter_ids.push_back("Z:" + ds.gene_ids[j]);
  }

  out.grades = Matrix(ds.sample_count(), 2 * n);
  for (std::size_t i = 0; i < ds.sample_count(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double s = smf(ds.values(i, j), bounds[j]->lo, bounds[j]->hi);
      out.grades(i, 2 * j) = s;
      out.grades(i, 2 * j + 1) = 1.0 - s;  // exact complement
    }
  }
  return out;
}

}  // namespace fssc
