#include "infogeo/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace infogeo {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_header(std::ofstream& out, const std::vector<std::string>& column_names,
                  const std::string& metadata) {
  if (!metadata.empty()) out << "# " << metadata << "\n";
  for (std::size_t c = 0; c < column_names.size(); ++c)
    out << (c ? "," : "") << column_names[c];
  out << "\n";
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open for writing: " + path);
  return out;
}

}  // namespace

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& values,
                      const std::vector<std::string>& column_names,
                      const std::string& metadata) {
  std::ofstream out = open_or_throw(path);
  write_header(out, column_names, metadata);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j)
      out << (j ? "," : "") << format_double(values(i, j));
    out << "\n";
  }
}

void write_rows_csv(const std::string& path, const std::vector<std::string>& column_names,
                    const std::vector<std::vector<std::string>>& rows,
                    const std::string& metadata) {
  std::ofstream out = open_or_throw(path);
  write_header(out, column_names, metadata);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << "\n";
  }
}

std::vector<SimplexPoint> read_distributions_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open distributions file: " + path);
  std::vector<SimplexPoint> out;
  std::string line;
  int line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    // Skip a non-numeric header row.
    if (line.find_first_not_of("0123456789.,+-eE \t\r") != std::string::npos) {
      if (out.empty() && dim == 0) continue;
      throw ValidationError("distributions file: unparsable row " + std::to_string(line_no));
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ValidationError("distributions file: bad number in row " +
                              std::to_string(line_no));
      }
    }
    if (row.empty()) continue;
    if (dim == 0) dim = row.size();
    if (row.size() != dim)
      throw ValidationError("distributions file: row " + std::to_string(line_no) +
                            " has " + std::to_string(row.size()) + " entries, expected " +
                            std::to_string(dim));
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0))
        throw ValidationError("distributions file: negative entry in row " +
                              std::to_string(line_no));
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6)
      throw ValidationError("distributions file: row " + std::to_string(line_no) +
                            " sums to " + format_double(sum) + ", not 1 (tolerance 1e-6)");
    for (double& v : row) v /= sum;
    out.emplace_back(std::move(row));
  }
  if (out.empty()) throw ValidationError("distributions file: no distributions in " + path);
  return out;
}

}  // namespace infogeo
