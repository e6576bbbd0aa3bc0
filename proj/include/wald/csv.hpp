#ifndef WALD_CSV_HPP
#define WALD_CSV_HPP

#include <iosfwd>
#include <string>

#include "wald/types.hpp"

namespace wald {

/// Malformed CSV input; the message names the file and line.
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Headerless CSV, one matrix row per line. Blank lines are ignored.
MatrixXd parse_matrix_csv(std::istream& in, const std::string& source = "<input>");
MatrixXd read_matrix_csv(const std::string& path);

/// Single-column CSV.
VectorXd read_vector_csv(const std::string& path);

// 17 significant digits, so reading back reproduces every entry exactly.
void write_matrix_csv(std::ostream& out, const MatrixXd& m);
void write_matrix_csv(const MatrixXd& m, const std::string& path);

}  // namespace wald

#endif  // WALD_CSV_HPP
