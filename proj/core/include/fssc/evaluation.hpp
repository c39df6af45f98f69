#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fssc/dataset.hpp"
#include "fssc/fuzzifier.hpp"
#include "fssc/gene_filter.hpp"

namespace fssc {

// One-vs-rest confusion counts per class over one set of predictions.
struct ConfusionCounts {
  struct PerClass {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
  };
  std::vector<std::string> class_ids;
  std::vector<PerClass> per_class;
  std::uint64_t total = 0;
};

ConfusionCounts confusion(std::span<const std::string> y_true,
                          std::span<const std::string> y_pred,
                          std::span<const std::string> class_set);

// Metrics with zero denominator are reported as absent, never 0 or NaN.
struct ClassMetrics {
  std::optional<double> precision;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
};

struct MetricsSummary {
  std::vector<std::string> class_ids;
  std::vector<ClassMetrics> per_class;
  double accuracy = 0.0;  // correct predictions / total
};

MetricsSummary metrics(const ConfusionCounts& counts);

enum class ClassifierKind { fssc, knn, fknn };

std::string classifier_name(ClassifierKind kind);

struct EvalConfig {
  std::vector<ClassifierKind> classifiers{ClassifierKind::fssc, ClassifierKind::knn,
                                          ClassifierKind::fknn};
  SplitStrategy strategy = SplitStrategy::kfold;
  std::size_t folds = 5;        // kfold
  double test_fraction = 0.3;   // holdout
  std::uint64_t seed = 0;
  std::size_t bins = 10;
  std::size_t top_k = 0;        // 0 keeps every gene
  std::size_t knn_k = 3;
  double fknn_m = 2.0;
  FilterMode filter_mode = FilterMode::information_gain;
  std::string positive_class;   // defaults to the first class
  unsigned threads = 0;
};

// What one fold fitted and predicted; fitted params are recorded so leakage
// from the test split is observable.
struct FoldRecord {
  std::vector<std::size_t> test_indices;
  std::vector<std::string> test_sample_ids;
  std::vector<std::string> selected_genes;
  FuzzificationParams fuzz_params;
  std::map<std::string, std::vector<std::string>> predictions;  // per classifier
  std::map<std::string, double> fold_accuracy;
};

struct ClassifierResult {
  std::string name;
  ConfusionCounts pooled_confusion;
  MetricsSummary summary;
  double train_seconds = 0.0;
  double predict_seconds = 0.0;
};

struct EvaluationReport {
  EvalConfig config;
  std::vector<std::string> class_ids;
  std::string positive_class;
  std::vector<FoldRecord> folds;
  std::vector<ClassifierResult> results;
  double total_seconds = 0.0;
};

// Cross-validated comparison of the selected classifiers. Gene ranking and
// fuzzification bounds are fitted per fold on the training split only;
// metrics pool the test predictions of all folds (micro aggregation).
// Deterministic for a fixed seed, up to the recorded timings.
EvaluationReport run_benchmark(const ExpressionDataset& ds, const EvalConfig& config);

// JSON document; all wall-clock fields live under "timings" keys so they can
// be stripped before byte comparisons.
void write_report_json(const EvaluationReport& report, std::ostream& out);

// Flat table: classifier, class, precision, sensitivity, specificity,
// accuracy. Undefined metrics are empty cells.
void write_metrics_csv(const EvaluationReport& report, std::ostream& out);

// Plot-ready series: classifier, fold ("overall" for the pooled row), accuracy.
void write_accuracy_csv(const EvaluationReport& report, std::ostream& out);

}  // namespace fssc
