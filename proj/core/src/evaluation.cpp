#include "fssc/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <unordered_map>

#include "fssc/baselines.hpp"
#include "fssc/errors.hpp"
#include "fssc/fss_classifier.hpp"
#include "text_util.hpp"

#include "json.hpp"

namespace fssc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::unordered_map<std::string_view, std::size_t> index_classes(
    std::span<const std::string> class_set) {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t c = 0; c < class_set.size(); ++c) index[class_set[c]] = c;
  return index;
}

std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

nlohmann::json metric_json(const std::optional<double>& value) {
  if (!value) return nullptr;
  return *value;
}

}  // namespace

std::string classifier_name(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::fssc: return "fssc";
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::fknn: return "fknn";
  }
  throw ValidationError("unknown classifier kind");
}

ConfusionCounts confusion(std::span<const std::string> y_true,
                          std::span<const std::string> y_pred,
                          std::span<const std::string> class_set) {
  if (y_true.size() != y_pred.size()) {
    throw ValidationError("true and predicted label lists differ in length");
  }
  if (y_true.empty()) throw ValidationError("confusion needs at least 1 prediction");

  const auto class_index = index_classes(class_set);
  auto index_of = [&](const std::string& label) {
    const auto it = class_index.find(label);
    if (it == class_index.end()) {
      throw ValidationError("label \"" + label + "\" outside the class set");
    }
    return it->second;
  };

  ConfusionCounts counts;
  counts.class_ids.assign(class_set.begin(), class_set.end());
  counts.per_class.resize(class_set.size());
  counts.total = y_true.size();
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const std::size_t t = index_of(y_true[i]);
    const std::size_t p = index_of(y_pred[i]);
    for (std::size_t c = 0; c < class_set.size(); ++c) {
      auto& cell = counts.per_class[c];
      if (t == c && p == c) cell.tp++;
      else if (t != c && p == c) cell.fp++;
      else if (t == c && p != c) cell.fn++;
      else cell.tn++;
    }
  }
  return counts;
}

MetricsSummary metrics(const ConfusionCounts& counts) {
  MetricsSummary summary;
  summary.class_ids = counts.class_ids;
  std::uint64_t correct = 0;
  for (const auto& cell : counts.per_class) {
    ClassMetrics m;
    m.precision = ratio(cell.tp, cell.tp + cell.fp);
    m.sensitivity = ratio(cell.tp, cell.tp + cell.fn);
    m.specificity = ratio(cell.tn, cell.tn + cell.fp);
    summary.per_class.push_back(m);
    correct += cell.tp;
  }
  if (counts.total == 0) throw ValidationError("confusion counts are empty");
  summary.accuracy = static_cast<double>(correct) / static_cast<double>(counts.total);
  return summary;
}

EvaluationReport run_benchmark(const ExpressionDataset& ds, const EvalConfig& config) {
  const auto started = Clock::now();

  if (config.classifiers.empty()) throw ValidationError("no classifiers selected");
  if (ds.class_set.size() < 2) {
    throw ValidationError("evaluation needs at least 2 classes, dataset has " +
                          std::to_string(ds.class_set.size()));
  }
  if (config.bins == 0) throw ValidationError("bins must be positive");
  if (config.top_k > ds.gene_count()) {
    throw ValidationError("top-k exceeds the dataset's " +
                          std::to_string(ds.gene_count()) + " genes");
  }

  const bool wants_knn =
      std::find(config.classifiers.begin(), config.classifiers.end(),
                ClassifierKind::knn) != config.classifiers.end();
  const bool wants_fknn =
      std::find(config.classifiers.begin(), config.classifiers.end(),
                ClassifierKind::fknn) != config.classifiers.end();
  const bool wants_fssc =
      std::find(config.classifiers.begin(), config.classifiers.end(),
                ClassifierKind::fssc) != config.classifiers.end();
  if ((wants_knn || wants_fknn) && config.knn_k == 0) {
    throw ValidationError("K must be positive");
  }
  if (wants_fknn && !(config.fknn_m > 1.0)) throw ValidationError("fuzzifier m must be > 1");

  EvaluationReport report;
  report.config = config;
  report.class_ids = ds.class_set;
  report.positive_class = config.positive_class.empty() ? ds.class_set.front()
                                                        : config.positive_class;
  if (std::find(ds.class_set.begin(), ds.class_set.end(), report.positive_class) ==
      ds.class_set.end()) {
    throw ValidationError("positive class \"" + report.positive_class +
                          "\" is not a dataset class");
  }

  const SplitPlan plan = config.strategy == SplitStrategy::kfold
                             ? stratified_kfold(ds, config.folds, config.seed)
                             : stratified_split(ds, config.test_fraction, config.seed);
  for (const auto& fold : plan.folds) {
    if ((wants_knn || wants_fknn) && config.knn_k > fold.train.size()) {
      throw ValidationError("K=" + std::to_string(config.knn_k) +
                            " exceeds a fold's training size " +
                            std::to_string(fold.train.size()));
    }
  }

  struct Tally {
    std::vector<std::string> y_pred;
    double train_seconds = 0.0;
    double predict_seconds = 0.0;
  };
  std::map<std::string, Tally> tallies;
  for (const auto kind : config.classifiers) tallies[classifier_name(kind)];
  std::vector<std::string> y_true_pooled;

  for (const auto& fold : plan.folds) {
    FoldRecord record;
    record.test_indices = fold.test;
    for (const auto idx : fold.test) record.test_sample_ids.push_back(ds.sample_ids[idx]);

    ExpressionDataset train = take_samples(ds, fold.train);
    ExpressionDataset test = take_samples(ds, fold.test);
    if (config.top_k > 0) {
      const GeneRanking ranking =
          rank_genes(train, config.filter_mode, config.bins, config.threads);
      train = select_top_k(ranking, config.top_k, train);
      test = select_top_k(ranking, config.top_k, test);
    }
    record.selected_genes = train.gene_ids;

    const FuzzificationParams fuzz = fit_params(train);
    record.fuzz_params = fuzz;

    std::vector<std::string> fold_truth;
    for (const auto idx : fold.test) fold_truth.push_back(ds.labels[idx]);
    y_true_pooled.insert(y_true_pooled.end(), fold_truth.begin(), fold_truth.end());

    if (wants_fssc) {
      auto& tally = tallies["fssc"];
      auto start = Clock::now();
      const FuzzifiedDataset ftrain = transform(train, fuzz);
      const FuzzySoftSetModel model = fit(ftrain, fuzz);
      tally.train_seconds += seconds_since(start);

      start = Clock::now();
      const FuzzifiedDataset ftest = transform(test, fuzz);
      std::vector<std::string> preds;
      for (std::size_t i = 0; i < ftest.sample_ids.size(); ++i) {
        preds.push_back(predict(model, ftest.grades.row(i)).label);
      }
      tally.predict_seconds += seconds_since(start);
      record.predictions["fssc"] = preds;
      tally.y_pred.insert(tally.y_pred.end(), preds.begin(), preds.end());
    }

    if (wants_knn || wants_fknn) {
      auto scale_start = Clock::now();
      BaselineTrainingSet baseline;
      baseline.features = minmax_scale(train.values, fuzz.genes());
      baseline.labels = train.labels;
      baseline.class_set = train.class_set;
      const Matrix scaled_test = minmax_scale(test.values, fuzz.genes());
      const double scale_seconds = seconds_since(scale_start);

      if (wants_knn) {
        auto& tally = tallies["knn"];
        tally.train_seconds += scale_seconds;
        const auto start = Clock::now();
        std::vector<std::string> preds;
        for (std::size_t i = 0; i < scaled_test.rows; ++i) {
          preds.push_back(knn_predict(baseline, scaled_test.row(i), config.knn_k));
        }
        tally.predict_seconds += seconds_since(start);
        record.predictions["knn"] = preds;
        tally.y_pred.insert(tally.y_pred.end(), preds.begin(), preds.end());
      }
      if (wants_fknn) {
        auto& tally = tallies["fknn"];
        tally.train_seconds += scale_seconds;
        const auto start = Clock::now();
        std::vector<std::string> preds;
        for (std::size_t i = 0; i < scaled_test.rows; ++i) {
          preds.push_back(
              fknn_predict(baseline, scaled_test.row(i), config.knn_k, config.fknn_m));
        }
        tally.predict_seconds += seconds_since(start);
        record.predictions["fknn"] = preds;
        tally.y_pred.insert(tally.y_pred.end(), preds.begin(), preds.end());
      }
    }

    for (const auto& [name, preds] : record.predictions) {
      std::size_t correct = 0;
      for (std::size_t i = 0; i < preds.size(); ++i) {
        if (preds[i] == fold_truth[i]) correct++;
      }
      record.fold_accuracy[name] =
          static_cast<double>(correct) / static_cast<double>(preds.size());
    }
    report.folds.push_back(std::move(record));
  }

  for (const auto kind : config.classifiers) {
    const auto name = classifier_name(kind);
    const auto& tally = tallies.at(name);
    ClassifierResult result;
    result.name = name;
    result.pooled_confusion = confusion(y_true_pooled, tally.y_pred, ds.class_set);
    result.summary = metrics(result.pooled_confusion);
    result.train_seconds = tally.train_seconds;
    result.predict_seconds = tally.predict_seconds;
    report.results.push_back(std::move(result));
  }

  report.total_seconds = seconds_since(started);
  return report;
}

void write_report_json(const EvaluationReport& report, std::ostream& out) {
  nlohmann::json doc;

  nlohmann::json classifiers = nlohmann::json::array();
  for (const auto kind : report.config.classifiers) classifiers.push_back(classifier_name(kind));
  doc["config"] = {
      {"classifiers", classifiers},
      {"strategy", report.config.strategy == SplitStrategy::kfold ? "kfold" : "holdout"},
      {"folds", report.config.folds},
      {"test_fraction", report.config.test_fraction},
      {"seed", report.config.seed},
      {"bins", report.config.bins},
      {"top_k", report.config.top_k},
      {"k", report.config.knn_k},
      {"m", report.config.fknn_m},
      {"filter_mode", report.config.filter_mode == FilterMode::information_gain
                          ? "information_gain"
                          : "entropy"},
      {"positive_class", report.positive_class},
      {"threads", report.config.threads},
  };
  doc["class_ids"] = report.class_ids;
  doc["positive_class"] = report.positive_class;

  doc["folds"] = nlohmann::json::array();
  for (std::size_t f = 0; f < report.folds.size(); ++f) {
    const auto& fold = report.folds[f];
    nlohmann::json genes = nlohmann::json::array();
    for (const auto& b : fold.fuzz_params.genes()) {
      genes.push_back({{"gene", b.gene_id}, {"a", b.lo}, {"b", b.hi}});
    }
    doc["folds"].push_back({
        {"fold", f},
        {"test_indices", fold.test_indices},
        {"test_sample_ids", fold.test_sample_ids},
        {"selected_genes", fold.selected_genes},
        {"fuzzification_params",
         {{"fitted_on", fold.fuzz_params.fitted_on}, {"genes", genes}}},
        {"predictions", fold.predictions},
        {"accuracy", fold.fold_accuracy},
    });
  }

  doc["results"] = nlohmann::json::array();
  for (const auto& result : report.results) {
    nlohmann::json per_class = nlohmann::json::array();
    for (std::size_t c = 0; c < result.summary.class_ids.size(); ++c) {
      const auto& cell = result.pooled_confusion.per_class[c];
      const auto& m = result.summary.per_class[c];
      per_class.push_back({
          {"class", result.summary.class_ids[c]},
          {"tp", cell.tp},
          {"fp", cell.fp},
          {"tn", cell.tn},
          {"fn", cell.fn},
          {"precision", metric_json(m.precision)},
          {"sensitivity", metric_json(m.sensitivity)},
          {"specificity", metric_json(m.specificity)},
      });
    }
    doc["results"].push_back({
        {"classifier", result.name},
        {"per_class", per_class},
        {"accuracy", result.summary.accuracy},
        {"timings",
         {{"train_seconds", result.train_seconds},
          {"predict_seconds", result.predict_seconds}}},
    });
  }
  doc["timings"] = {{"total_seconds", report.total_seconds}};

  out << doc.dump(2) << '\n';
}

void write_metrics_csv(const EvaluationReport& report, std::ostream& out) {
  auto cell = [](const std::optional<double>& v) {
    return v ? detail::format_double(*v) : std::string{};
  };
  out << "classifier,class,precision,sensitivity,specificity,accuracy\n";
  for (const auto& result : report.results) {
    for (std::size_t c = 0; c < result.summary.class_ids.size(); ++c) {
      const auto& m = result.summary.per_class[c];
      out << result.name << ',' << result.summary.class_ids[c] << ',' << cell(m.precision)
          << ',' << cell(m.sensitivity) << ',' << cell(m.specificity) << ','
          << detail::format_double(result.summary.accuracy) << '\n';
    }
  }
}

void write_accuracy_csv(const EvaluationReport& report, std::ostream& out) {
  out << "classifier,fold,accuracy\n";
  for (const auto& result : report.results) {
    for (std::size_t f = 0; f < report.folds.size(); ++f) {
      const auto it = report.folds[f].fold_accuracy.find(result.name);
      if (it == report.folds[f].fold_accuracy.end()) continue;
      out << result.name << ',' << f << ',' << detail::format_double(it->second) << '\n';
    }
    out << result.name << ",overall," << detail::format_double(result.summary.accuracy)
        << '\n';
  }
}

}  // namespace fssc
