#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "infogeo/types.hpp"

namespace infogeo {

/// Write a matrix as CSV: a '#' metadata comment line, a header row, then
/// row-major data printed with round-trip precision.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& values,
                      const std::vector<std::string>& column_names,
                      const std::string& metadata);

/// Write pre-formatted rows (first column may be a label) under a header.
void write_rows_csv(const std::string& path,
                    const std::vector<std::string>& column_names,
                    const std::vector<std::vector<std::string>>& rows,
                    const std::string& metadata);

std::string format_double(double v);

/// Read one distribution per row. Rows must be nonnegative and sum to 1
/// within 1e-6 (a ValidationError names the offending row); rows are then
/// renormalized to machine precision.
std::vector<SimplexPoint> read_distributions_csv(const std::string& path);

}  // namespace infogeo
