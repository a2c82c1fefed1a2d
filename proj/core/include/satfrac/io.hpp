#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "satfrac/design.hpp"
#include "satfrac/intmat.hpp"
#include "satfrac/kernel_vector.hpp"

namespace satfrac {

// Text formats.  All readers skip blank lines and lines starting with '#'.
//
//   matrix:   "<rows> <cols>" header, then one row per line of
//             whitespace-delimited integers.
//   fraction: one design point per line as its space-separated level tuple.
//   basis:    "<count> <K>" header, then one vector per line (matrix row
//             grammar).
//   samples:  '#'-prefixed "key: value" metadata, then fraction blocks
//             separated by "---" lines.
//
// Malformed input raises IoError with the offending line number.

IntMatrix read_matrix(std::istream& in, const std::string& name = "<stream>");
IntMatrix read_matrix_file(const std::string& path);
void write_matrix(const IntMatrix& m, std::ostream& out);
void write_matrix_file(const IntMatrix& m, const std::string& path);

Fraction read_fraction(std::istream& in, const FactorialDesign& design,
                       const std::string& name = "<stream>");
Fraction read_fraction_file(const std::string& path, const FactorialDesign& design);
void write_fraction(const Fraction& fraction, std::ostream& out);
void write_fraction_file(const Fraction& fraction, const std::string& path);

std::vector<KernelVector> read_basis(std::istream& in, const std::string& name = "<stream>");
std::vector<KernelVector> read_basis_file(const std::string& path);
void write_basis(const std::vector<KernelVector>& vectors, std::ostream& out);
void write_basis_file(const std::vector<KernelVector>& vectors, const std::string& path);

// Streams a sample run: metadata first, then fractions separated by "---".
class SampleStreamWriter {
 public:
  explicit SampleStreamWriter(std::ostream& out) : out_(out) {}

  // Emits "# key: value"; only callable before the first fraction.
  void metadata(const std::string& key, const std::string& value);
  void add(const Fraction& fraction);

 private:
  std::ostream& out_;
  bool any_fraction_ = false;
};

std::vector<Fraction> read_sample_stream(std::istream& in, const FactorialDesign& design,
                                         const std::string& name = "<stream>");
std::vector<Fraction> read_sample_stream_file(const std::string& path,
                                              const FactorialDesign& design);

}  // namespace satfrac
