#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fssc/matrix.hpp"

namespace fssc {

// Labeled sample-by-gene expression matrix; the single ingestion type for all
// downstream stages. All expression values are finite, sample and gene ids are
// unique, and class_set lists the distinct labels in first-appearance order.
struct ExpressionDataset {
  std::vector<std::string> sample_ids;  // m, unique
  std::vector<std::string> gene_ids;    // n, unique
  Matrix values;                        // m x n
  std::vector<std::string> labels;      // m
  std::vector<std::string> class_set;

  std::size_t sample_count() const { return sample_ids.size(); }
  std::size_t gene_count() const { return gene_ids.size(); }

  // Throws ValidationError when any structural invariant is broken.
  void validate() const;
};

struct CsvOptions {
  char delimiter = ',';
  std::string label_column = "class";
};

// CSV layout: one header row; first column is the sample id; the column named
// options.label_column carries the class label; every remaining column is one
// numeric gene. UTF-8, LF or CRLF, no quoting (cells must not contain the
// delimiter). Missing or non-numeric values are rejected, not imputed.
ExpressionDataset load_csv(std::istream& in, const CsvOptions& options = {});
ExpressionDataset load_csv_file(const std::string& path, const CsvOptions& options = {});

// Inverse of load_csv; numeric cells use shortest round-trip decimals, so a
// save/load cycle reproduces the dataset bit-exactly.
void save_csv(const ExpressionDataset& ds, std::ostream& out, const CsvOptions& options = {});
void save_csv_file(const ExpressionDataset& ds, const std::string& path,
                   const CsvOptions& options = {});

enum class SplitStrategy { holdout, kfold };

struct Fold {
  std::vector<std::size_t> train;  // sorted sample indices
  std::vector<std::size_t> test;
};

struct SplitPlan {
  SplitStrategy strategy = SplitStrategy::holdout;
  std::uint64_t seed = 0;
  std::vector<Fold> folds;
};

// Single stratified holdout split. Per class, round(test_fraction * class
// size) samples go to test, clamped so both sides keep at least one sample of
// every class. Deterministic for a fixed seed; requires >= 2 samples per class.
SplitPlan stratified_split(const ExpressionDataset& ds, double test_fraction,
                           std::uint64_t seed);

// k stratified folds (2 <= k <= smallest class size). Test sets partition the
// sample indices and per-class fold counts differ by at most 1.
SplitPlan stratified_kfold(const ExpressionDataset& ds, std::size_t k, std::uint64_t seed);

void write_split_plan_json(const SplitPlan& plan, std::ostream& out);
SplitPlan read_split_plan_json(std::istream& in);

// Row subset in the given index order; class_set is recomputed from the kept
// rows (first-appearance order). Gene columns are untouched.
ExpressionDataset take_samples(const ExpressionDataset& ds,
                               std::span<const std::size_t> indices);

}  // namespace fssc
