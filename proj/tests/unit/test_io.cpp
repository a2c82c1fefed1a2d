#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "satfrac/design.hpp"
#include "satfrac/errors.hpp"
#include "satfrac/intmat.hpp"
#include "satfrac/io.hpp"
#include "satfrac/kernel_vector.hpp"

using satfrac::FactorialDesign;
using satfrac::Fraction;
using satfrac::Int;
using satfrac::IntMatrix;
using satfrac::IoError;
using satfrac::KernelVector;

namespace {

// Message text of the IoError raised by `fn`, for line-number checks.
template <typename Fn>
std::string io_error_of(Fn&& fn) {
  try {
    fn();
  } catch (const IoError& e) {
    return e.what();
  }
  FAIL("expected IoError");
  return {};
}

}  // namespace

TEST_CASE("matrices round-trip through the text format") {
  IntMatrix m(2, 3);
  m.at(0, 0) = -4;
  m.at(0, 2) = 123456789;
  m.at(1, 1) = Int("90000000000000000001");
  std::ostringstream out;
  write_matrix(m, out);
  std::istringstream in(out.str());
  CHECK(satfrac::read_matrix(in) == m);
}

TEST_CASE("matrix reader skips comments and reports bad lines") {
  std::istringstream ok("# comment\n\n2 2\n1 2\n\n# more\n3 4\n");
  const IntMatrix m = satfrac::read_matrix(ok);
  CHECK(m.at(1, 1) == 4);

  // Wrong arity in a data row (line 3 of the stream).
  std::istringstream bad_row("2 2\n1 2\n3\n");
  const std::string msg =
      io_error_of([&] { satfrac::read_matrix(bad_row, "input.txt"); });
  CHECK(msg.find("input.txt") != std::string::npos);
  CHECK(msg.find("3") != std::string::npos);

  // Junk instead of a number.
  std::istringstream junk("1 2\n1 x\n");
  CHECK_THROWS_AS(satfrac::read_matrix(junk), IoError);
  // Missing rows.
  std::istringstream truncated("2 2\n1 2\n");
  CHECK_THROWS_AS(satfrac::read_matrix(truncated), IoError);
  // Trailing garbage after the matrix.
  std::istringstream trailing("1 1\n5\n7\n");
  CHECK_THROWS_AS(satfrac::read_matrix(trailing), IoError);
}

TEST_CASE("fractions round-trip as level tuples") {
  const FactorialDesign d({2, 3, 2});
  const Fraction f(d, {0, 5, 11});
  std::ostringstream out;
  write_fraction(f, out);
  // One tuple per line, e.g. point 5 = (0, 2, 1).
  CHECK(out.str().find("0 2 1") != std::string::npos);
  std::istringstream in(out.str());
  CHECK(satfrac::read_fraction(in, d) == f);
}

TEST_CASE("fraction reader reports the offending line") {
  const FactorialDesign d({2, 2});
  std::istringstream bad("0 0\n0 9\n");
  const std::string msg =
      io_error_of([&] { satfrac::read_fraction(bad, d, "frac.txt"); });
  CHECK(msg.find("frac.txt") != std::string::npos);
  CHECK(msg.find("2") != std::string::npos);  // line 2

  std::istringstream dup("0 0\n0 0\n");
  CHECK_THROWS_AS(satfrac::read_fraction(dup, d), IoError);
  std::istringstream arity("0\n");
  CHECK_THROWS_AS(satfrac::read_fraction(arity, d), IoError);
  // Comment-only input is a legal (empty) fraction.
  std::istringstream empty("# nothing\n");
  CHECK(satfrac::read_fraction(empty, d).size() == 0);
}

TEST_CASE("bases round-trip and reject malformed headers") {
  std::vector<KernelVector> basis{
      KernelVector::canonical(std::vector<std::int64_t>{1, -1, 0}),
      KernelVector::canonical(std::vector<std::int64_t>{0, 1, -2}),
  };
  std::ostringstream out;
  write_basis(basis, out);
  std::istringstream in(out.str());
  CHECK(satfrac::read_basis(in) == basis);

  std::istringstream count_off("3 3\n1 -1 0\n0 1 -2\n");
  CHECK_THROWS_AS(satfrac::read_basis(count_off), IoError);
  std::istringstream zero_vec("1 3\n0 0 0\n");
  CHECK_THROWS_AS(satfrac::read_basis(zero_vec), IoError);
}

TEST_CASE("file helpers create real files and surface missing paths as IoError") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "satfrac-io-test";
  fs::create_directories(dir);
  const std::string path = (dir / "m.txt").string();

  IntMatrix m(1, 2);
  m.at(0, 0) = 7;
  satfrac::write_matrix_file(m, path);
  CHECK(satfrac::read_matrix_file(path) == m);

  const std::string msg =
      io_error_of([&] { satfrac::read_matrix_file((dir / "absent.txt").string()); });
  CHECK(msg.find("absent.txt") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("sample streams carry metadata then fraction blocks") {
  const FactorialDesign d({2, 2});
  std::ostringstream out;
  satfrac::SampleStreamWriter writer(out);
  writer.metadata("seed", "9");
  writer.metadata("mode", "chain");
  writer.add(Fraction(d, {0, 3}));
  writer.add(Fraction(d, {1, 2}));
  const std::string text = out.str();
  CHECK(text.find("# seed: 9") != std::string::npos);
  CHECK(text.find("---") != std::string::npos);

  std::istringstream in(text);
  const std::vector<Fraction> back = satfrac::read_sample_stream(in, d);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == Fraction(d, {0, 3}));
  CHECK(back[1] == Fraction(d, {1, 2}));

  // Metadata after the first fraction is a programming error.
  std::ostringstream other;
  satfrac::SampleStreamWriter late(other);
  late.add(Fraction(d, {0}));
  CHECK_THROWS_AS(late.metadata("k", "v"), std::logic_error);
}

TEST_CASE("sample stream reader flags broken blocks with their line") {
  const FactorialDesign d({2, 2});
  std::istringstream bad("# seed: 1\n0 0\n bogus\n---\n");
  const std::string msg =
      io_error_of([&] { satfrac::read_sample_stream(bad, d, "s.txt"); });
  CHECK(msg.find("s.txt") != std::string::npos);
  CHECK(msg.find("3") != std::string::npos);
}
