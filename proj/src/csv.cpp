#include "wald/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string_view>
#include <vector>

namespace wald {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

MatrixXd parse_matrix_csv(std::istream& in, const std::string& source) {
  std::vector<double> values;
  Eigen::Index cols = -1, rows = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    Eigen::Index count = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      const auto field = trim(rest.substr(0, comma));
      if (field.empty()) fail(source, lineno, "empty field");
      double v = 0;
      const char* first = field.data();
      const char* last = field.data() + field.size();
      if (*first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) fail(source, lineno, "not a number: '" + std::string(field) + "'");
      if (!std::isfinite(v)) fail(source, lineno, "non-finite value '" + std::string(field) + "'");
      values.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cols < 0) cols = count;
    if (count != cols)
      fail(source, lineno, "ragged row: expected " + std::to_string(cols) + " fields, found " + std::to_string(count));
    ++rows;
  }
  if (rows == 0) throw ParseError(source + ": no data");
  MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  return m;
}

MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  return parse_matrix_csv(in, path);
}

VectorXd read_vector_csv(const std::string& path) {
  const MatrixXd m = read_matrix_csv(path);
  if (m.cols() != 1)
    throw ParseError(path + ": expected a single-column vector, found " + std::to_string(m.cols()) + " columns");
  return m.col(0);
}

void write_matrix_csv(std::ostream& out, const MatrixXd& m) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) buf << ',';
      buf << m(i, j);
    }
    buf << '\n';
  }
  out << buf.str();
}

void write_matrix_csv(const MatrixXd& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  write_matrix_csv(out, m);
  if (!out) throw InvalidArgument("write failed: " + path);
}

}  // namespace wald
