#pragma once

// Dataset ingestion shared by the threshold and SVM front ends: h numeric
// feature columns followed by one integer label column, optional header row.
// Malformed rows raise CsvError with the offending line number.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pacbayes {

struct CsvError : std::runtime_error {
  explicit CsvError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_number(line) {}
  std::size_t line_number;
};

struct CsvData {
  std::vector<std::vector<double>> features;
  std::vector<int> labels;
};

inline CsvData load_feature_csv(std::istream& is) {
  CsvData out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool first = true;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() < 2) throw CsvError("need at least one feature column and a label", line_no);
    if (first) {
      // optional header: skip if the first cell does not parse as a number
      try {
        std::size_t pos = 0;
        std::stod(cells[0], &pos);
        if (pos != cells[0].size() && cells[0].find_first_not_of(" \t", pos) != std::string::npos)
          throw std::invalid_argument("trailing junk");
      } catch (const std::exception&) {
        first = false;
        width = cells.size();
        continue;
      }
      width = cells.size();
      first = false;
    }
    if (cells.size() != width) throw CsvError("inconsistent column count", line_no);
    std::vector<double> row;
    for (std::size_t c = 0; c + 1 < cells.size(); ++c) {
      try {
        row.push_back(std::stod(cells[c]));
      } catch (const std::exception&) {
        throw CsvError("feature column " + std::to_string(c + 1) + " is not numeric", line_no);
      }
    }
    int label;
    try {
      std::size_t pos = 0;
      label = std::stoi(cells.back(), &pos);
    } catch (const std::exception&) {
      throw CsvError("label column is not an integer", line_no);
    }
    out.features.push_back(std::move(row));
    out.labels.push_back(label);
  }
  if (out.features.empty()) throw CsvError("no data rows", line_no == 0 ? 1 : line_no);
  return out;
}

inline CsvData load_feature_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open CSV file: " + path);
  return load_feature_csv(f);
}

}  // namespace pacbayes
