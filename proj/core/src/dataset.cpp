#include "fssc/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "fssc/errors.hpp"
#include "text_util.hpp"

namespace fssc {

namespace {

void check_unique(const std::vector<std::string>& ids, const char* what) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(ids.size());
  for (const auto& id : ids) {
    if (!seen.insert(id).second) {
      throw ValidationError(std::string("duplicate ") + what + " id \"" + id + "\"");
    }
  }
}

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

void ExpressionDataset::validate() const {
  const std::size_t m = sample_ids.size();
  const std::size_t n = gene_ids.size();
  if (values.rows != m || values.cols != n) {
    throw ValidationError("values matrix shape does not match sample/gene ids");
  }
  if (labels.size() != m) throw ValidationError("labels length does not match sample count");
  check_unique(sample_ids, "sample");
  check_unique(gene_ids, "gene");
  for (double v : values.data) {
    if (!std::isfinite(v)) throw ValidationError("expression values must be finite");
  }
  if (class_set.empty()) throw ValidationError("class_set must not be empty");
  std::unordered_set<std::string_view> classes(class_set.begin(), class_set.end());
  if (classes.size() != class_set.size()) {
    throw ValidationError("class_set entries must be distinct");
  }
  for (const auto& label : labels) {
    if (!classes.contains(label)) {
      throw ValidationError("label \"" + label + "\" missing from class_set");
    }
  }
}

ExpressionDataset load_csv(std::istream& in, const CsvOptions& options) {
  std::string line;
  if (!read_line(in, line)) throw ValidationError("empty dataset: no header row");
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);

  auto header = detail::split_line(line, options.delimiter);
  for (auto& cell : header) cell = std::string(detail::trim(cell));
  if (header.size() < 2) {
    throw ValidationError("header must contain a sample id column and a label column");
  }

  std::size_t label_col = header.size();
  for (std::size_t j = 1; j < header.size(); ++j) {
    if (header[j] == options.label_column) {
      label_col = j;
      break;
    }
  }
  if (label_col == header.size()) {
    throw ValidationError("missing label column \"" + options.label_column + "\"");
  }

  ExpressionDataset ds;
  std::vector<std::size_t> gene_cols;
  for (std::size_t j = 1; j < header.size(); ++j) {
    if (j == label_col) continue;
    if (header[j].empty()) {
      throw ValidationError("empty gene id in header column " + std::to_string(j + 1));
    }
    gene_cols.push_back(j);
    ds.gene_ids.push_back(header[j]);
  }
  if (gene_cols.empty()) throw ValidationError("empty dataset: no gene columns");
  check_unique(ds.gene_ids, "gene");

  std::unordered_set<std::string_view> seen_samples;
  std::unordered_set<std::string_view> seen_classes;
  std::vector<double> values;
  std::size_t row_no = 1;
  while (read_line(in, line)) {
    ++row_no;
    const auto fields = detail::split_line(line, options.delimiter);
    if (fields.size() != header.size()) {
      throw ValidationError("row " + std::to_string(row_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(header.size()));
    }
    std::string sample_id{detail::trim(fields[0])};
    if (sample_id.empty()) {
      throw ValidationError("empty sample id at row " + std::to_string(row_no));
    }
    ds.sample_ids.push_back(std::move(sample_id));
    if (!seen_samples.insert(ds.sample_ids.back()).second) {
      throw ValidationError("duplicate sample id \"" + ds.sample_ids.back() + "\"");
    }

    std::string label{detail::trim(fields[label_col])};
    if (label.empty()) {
      throw ValidationError("empty class label for sample \"" + ds.sample_ids.back() + "\"");
    }
    ds.labels.push_back(std::move(label));
    if (seen_classes.insert(ds.labels.back()).second) {
      ds.class_set.push_back(ds.labels.back());
    }

    for (std::size_t g = 0; g < gene_cols.size(); ++g) {
      const auto parsed = detail::parse_double(fields[gene_cols[g]]);
      if (!parsed) {
        throw ValidationError("non-numeric expression value \"" +
                              std::string(detail::trim(fields[gene_cols[g]])) +
                              "\" for sample \"" + ds.sample_ids.back() + "\", gene \"" +
                              ds.gene_ids[g] + "\"");
      }
      values.push_back(*parsed);
    }
  }

  if (ds.sample_ids.empty()) throw ValidationError("empty dataset: no data rows");
  ds.values.rows = ds.sample_ids.size();
  ds.values.cols = ds.gene_ids.size();
  ds.values.data = std::move(values);
  ds.validate();
  return ds;
}

ExpressionDataset load_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open \"" + path + "\" for reading");
  return load_csv(in, options);
}

void save_csv(const ExpressionDataset& ds, std::ostream& out, const CsvOptions& options) {
  const char d = options.delimiter;
  out << "id";
  for (const auto& gene : ds.gene_ids) out << d << gene;
  out << d << options.label_column << '\n';
  for (std::size_t i = 0; i < ds.sample_count(); ++i) {
    out << ds.sample_ids[i];
    for (std::size_t j = 0; j < ds.gene_count(); ++j) {
      out << d << detail::format_double(ds.values(i, j));
    }
    out << d << ds.labels[i] << '\n';
  }
}

void save_csv_file(const ExpressionDataset& ds, const std::string& path,
                   const CsvOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  save_csv(ds, out, options);
  out.flush();
  if (!out) throw IoError("failed writing \"" + path + "\"");
}

ExpressionDataset take_samples(const ExpressionDataset& ds,
                               std::span<const std::size_t> indices) {
  ExpressionDataset out;
  out.gene_ids = ds.gene_ids;
  out.values = Matrix(indices.size(), ds.gene_count());
  out.sample_ids.reserve(indices.size());
  out.labels.reserve(indices.size());
  std::unordered_set<std::string_view> seen;
  std::size_t row = 0;
  for (const std::size_t idx : indices) {
    if (idx >= ds.sample_count()) {
      throw ValidationError("sample index " + std::to_string(idx) + " out of range");
    }
    out.sample_ids.push_back(ds.sample_ids[idx]);
    out.labels.push_back(ds.labels[idx]);
    if (seen.insert(out.labels.back()).second) out.class_set.push_back(out.labels.back());
    const auto src = ds.values.row(idx);
    std::copy(src.begin(), src.end(), out.values.row(row).begin());
    ++row;
  }
  return out;
}

}  // namespace fssc
