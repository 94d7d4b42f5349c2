#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gips/estimate.hpp"
#include "gips/linalg.hpp"

namespace gips::cli {

struct CsvMatrix {
  /// Column names when the first row was not numeric.
  std::vector<std::string> header;
  Eigen::MatrixXd values;
};

/// Comma-separated numbers, one row per line. A first row containing any
/// non-numeric field is taken as a header. Blank lines are skipped.
CsvMatrix parse_csv(std::istream& in, const std::string& origin = "<stream>");
CsvMatrix read_csv(const std::string& path);

/// Shortest representation that reads back to the same double.
std::string format_double(double x);

void write_csv(std::ostream& out, const Eigen::MatrixXd& m, const std::vector<std::string>& header = {});
void write_csv_file(const std::string& path, const Eigen::MatrixXd& m, const std::vector<std::string>& header = {});

/// Reads a square matrix and checks symmetry.
SymMatrix read_symmetric(const std::string& path);

/// Character heatmap of a covariance matrix: equal entries share a glyph.
std::string render_heatmap(const SymMatrix& s);

/// i,j,partial_correlation with 1-based indices.
void write_edges_csv(std::ostream& out, const std::vector<Edge>& edges);

std::string ratio_to_string(double log_ratio);

}  // namespace gips::cli
