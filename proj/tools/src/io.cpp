#include "gips_cli/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "gips/errors.hpp"

namespace gips::cli {
namespace {

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string_view rest = line;
  while (true) {
    const auto comma = rest.find(',');
    fields.push_back(trim(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return fields;
}

std::optional<double> to_number(const std::string& field) {
  if (field.empty()) return std::nullopt;
  const char* begin = field.data();
  if (*begin == '+') ++begin;
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, field.data() + field.size(), x);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return x;
}

}  // namespace

CsvMatrix parse_csv(std::istream& in, const std::string& origin) {
  CsvMatrix out;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (const auto& f : fields) {
      const auto x = to_number(f);
      if (!x) {
        numeric = false;
        break;
      }
      row.push_back(*x);
    }
    if (!numeric) {
      if (!first) {
        throw InvalidArgument(origin + ":" + std::to_string(line_no) + ": non-numeric field");
      }
      out.header = fields;
    } else {
      if (!rows.empty() && row.size() != rows.front().size()) {
        throw InvalidArgument(origin + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(rows.front().size()) + " fields, found " +
                              std::to_string(row.size()));
      }
      rows.push_back(std::move(row));
    }
    first = false;
  }
  if (rows.empty()) throw InvalidArgument(origin + ": no numeric rows");
  if (!out.header.empty() && out.header.size() != rows.front().size()) {
    throw InvalidArgument(origin + ": header has " + std::to_string(out.header.size()) + " fields, rows have " +
                          std::to_string(rows.front().size()));
  }
  out.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  if (!out.values.allFinite()) throw InvalidArgument(origin + ": non-finite value");
  return out;
}

CsvMatrix read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return parse_csv(in, path);
}

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw InternalError("double formatting failed");
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const Eigen::MatrixXd& m, const std::vector<std::string>& header) {
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_double(m(r, c));
    out << '\n';
  }
}

void write_csv_file(const std::string& path, const Eigen::MatrixXd& m, const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_csv(out, m, header);
}

SymMatrix read_symmetric(const std::string& path) {
  const auto csv = read_csv(path);
  if (csv.values.rows() != csv.values.cols()) {
    throw InvalidArgument(path + ": matrix is " + std::to_string(csv.values.rows()) + "x" +
                          std::to_string(csv.values.cols()) + ", expected square");
  }
  return SymMatrix::from_dense(csv.values);
}

std::string render_heatmap(const SymMatrix& s) {
  static constexpr std::string_view glyphs =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  const std::size_t p = s.size();
  const double scale = std::max(s.frobenius_norm(), 1e-300);
  std::map<long long, char> classes;
  std::ostringstream out;
  bool exhausted = false;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const auto key = std::llround(s(i, j) / scale * 1e9);
      auto it = classes.find(key);
      if (it == classes.end()) {
        const char g = classes.size() < glyphs.size() ? glyphs[classes.size()] : '*';
        exhausted = exhausted || g == '*';
        it = classes.emplace(key, g).first;
      }
      out << (j ? " " : "") << it->second;
    }
    out << '\n';
  }
  out << classes.size() << " distinct values" << (exhausted ? " (some shown as *)" : "") << '\n';
  return out.str();
}

void write_edges_csv(std::ostream& out, const std::vector<Edge>& edges) {
  out << "i,j,partial_correlation\n";
  for (const auto& e : edges) out << e.i + 1 << ',' << e.j + 1 << ',' << format_double(e.partial_correlation) << '\n';
}

std::string ratio_to_string(double log_ratio) {
  if (std::isnan(log_ratio)) return "nan";
  char buf[64];
  if (std::abs(log_ratio) < 690.0) {
    const double r = std::exp(log_ratio);
    if (r >= 1e-3 && r < 1e6) {
      std::snprintf(buf, sizeof buf, "%.4g", r);
    } else {
      std::snprintf(buf, sizeof buf, "%.3e", r);
    }
    return buf;
  }
  const double l10 = log_ratio / std::log(10.0);
  double exponent = std::floor(l10);
  double mantissa = std::pow(10.0, l10 - exponent);
  if (mantissa >= 9.9995) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  std::snprintf(buf, sizeof buf, "%.3fe%+.0f", mantissa, exponent);
  return buf;
}

}  // namespace gips::cli
