#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "fssc/dataset.hpp"
#include "fssc/errors.hpp"
#include "fssc/random.hpp"

#include "json.hpp"

namespace fssc {

namespace {

// Sample indices grouped by class, classes in class_set order, indices in
// original row order within each group.
std::vector<std::vector<std::size_t>> group_by_class(const ExpressionDataset& ds) {
  std::unordered_map<std::string_view, std::size_t> class_index;
  for (std::size_t c = 0; c < ds.class_set.size(); ++c) class_index[ds.class_set[c]] = c;
  std::vector<std::vector<std::size_t>> groups(ds.class_set.size());
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    groups[class_index.at(ds.labels[i])].push_back(i);
  }
  return groups;
}

}  // namespace

SplitPlan stratified_split(const ExpressionDataset& ds, double test_fraction,
                           std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ValidationError("test_fraction must lie in (0,1)");
  }
  auto groups = group_by_class(ds);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    if (groups[c].size() < 2) {
      throw ValidationError("class \"" + ds.class_set[c] + "\" has fewer than 2 samples");
    }
  }

  Rng rng(seed);
  Fold fold;
  for (auto& group : groups) {
    rng.shuffle(group);
    // Nearest count to the exact proportion, but both sides keep >= 1 sample.
    auto want = static_cast<std::size_t>(
        std::lround(test_fraction * static_cast<double>(group.size())));
    want = std::clamp<std::size_t>(want, 1, group.size() - 1);
    fold.test.insert(fold.test.end(), group.begin(), group.begin() + want);
    fold.train.insert(fold.train.end(), group.begin() + want, group.end());
  }
  std::sort(fold.train.begin(), fold.train.end());
  std::sort(fold.test.begin(), fold.test.end());

  SplitPlan plan;
  plan.strategy = SplitStrategy::holdout;
  plan.seed = seed;
  plan.folds.push_back(std::move(fold));
  return plan;
}

SplitPlan stratified_kfold(const ExpressionDataset& ds, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ValidationError("k must be at least 2");
  auto groups = group_by_class(ds);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    if (groups[c].size() < k) {
      throw ValidationError("k=" + std::to_string(k) + " exceeds smallest class size " +
                            std::to_string(groups[c].size()) + " (class \"" +
                            ds.class_set[c] + "\")");
    }
  }

  Rng rng(seed);
  std::vector<std::size_t> fold_of(ds.sample_count());
  for (auto& group : groups) {
    rng.shuffle(group);
    for (std::size_t i = 0; i < group.size(); ++i) fold_of[group[i]] = i % k;
  }

  SplitPlan plan;
  plan.strategy = SplitStrategy::kfold;
  plan.seed = seed;
  plan.folds.resize(k);
  for (std::size_t i = 0; i < ds.sample_count(); ++i) {
    for (std::size_t f = 0; f < k; ++f) {
      (f == fold_of[i] ? plan.folds[f].test : plan.folds[f].train).push_back(i);
    }
  }
  return plan;
}

void write_split_plan_json(const SplitPlan& plan, std::ostream& out) {
  nlohmann::json doc;
  doc["strategy"] = plan.strategy == SplitStrategy::kfold ? "kfold" : "holdout";
  doc["seed"] = plan.seed;
  doc["folds"] = nlohmann::json::array();
  for (const auto& fold : plan.folds) {
    doc["folds"].push_back({{"train", fold.train}, {"test", fold.test}});
  }
  out << doc.dump(2) << '\n';
}

SplitPlan read_split_plan_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed split plan document: ") + e.what());
  }
  SplitPlan plan;
  try {
    const auto strategy = doc.at("strategy").get<std::string>();
    if (strategy == "kfold") {
      plan.strategy = SplitStrategy::kfold;
    } else if (strategy == "holdout") {
      plan.strategy = SplitStrategy::holdout;
    } else {
      throw ValidationError("unknown split strategy \"" + strategy + "\"");
    }
    plan.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& fold : doc.at("folds")) {
      Fold f;
      f.train = fold.at("train").get<std::vector<std::size_t>>();
      f.test = fold.at("test").get<std::vector<std::size_t>>();
      plan.folds.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed split plan document: ") + e.what());
  }
  return plan;
}

}  // namespace fssc
