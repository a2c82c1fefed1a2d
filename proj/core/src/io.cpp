#include "satfrac/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "satfrac/errors.hpp"

namespace satfrac {
namespace {

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

bool is_comment(const std::string& s) {
  const auto pos = s.find_first_not_of(" \t\r");
  return pos != std::string::npos && s[pos] == '#';
}

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Content-line iterator (skips blanks and '#' comments) that tracks the
// physical line number for error messages.
struct LineReader {
  std::istream& in;
  const std::string& name;
  std::int64_t line_no = 0;

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (is_blank(line) || is_comment(line)) continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw IoError(name + ":" + std::to_string(line_no) + ": " + msg);
  }
  [[noreturn]] void fail_eof(const std::string& msg) const {
    throw IoError(name + ": unexpected end of input: " + msg);
  }
};

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

Int parse_entry(const LineReader& r, const std::string& tok) {
  try {
    return Int(tok);
  } catch (const std::exception&) {
    r.fail("not an integer: '" + tok + "'");
  }
}

std::int64_t parse_i64(const LineReader& r, const std::string& tok) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    r.fail("not a plain integer: '" + tok + "'");
  }
}

std::int64_t parse_dim(const LineReader& r, const std::string& tok) {
  const std::int64_t v = parse_i64(r, tok);
  if (v < 0) r.fail("dimension must be nonnegative: '" + tok + "'");
  return v;
}

void require_end(LineReader& r, const char* what) {
  std::string line;
  if (r.next(line)) r.fail(std::string("trailing content after ") + what);
}

std::int64_t parse_point(const LineReader& r, const FactorialDesign& design,
                         const std::vector<std::string>& toks) {
  if (static_cast<int>(toks.size()) != design.factor_count()) {
    r.fail("expected " + std::to_string(design.factor_count()) + " levels, got " +
           std::to_string(toks.size()));
  }
  std::vector<int> tuple(design.factor_count());
  for (int k = 0; k < design.factor_count(); ++k) {
    const std::int64_t v = parse_i64(r, toks[k]);
    if (v < 0 || v >= design.levels()[k]) {
      r.fail("factor " + std::to_string(k) + " level out of range: " + toks[k]);
    }
    tuple[k] = static_cast<int>(v);
  }
  return design.point_index(tuple);
}

}  // namespace

IntMatrix read_matrix(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  std::string line;
  if (!r.next(line)) r.fail_eof("missing matrix header");
  const auto head = tokens_of(line);
  if (head.size() != 2) r.fail("matrix header must be '<rows> <cols>'");
  const std::int64_t rows = parse_dim(r, head[0]);
  const std::int64_t cols = parse_dim(r, head[1]);
  if (rows > 1'000'000 || cols > 1'000'000 || rows * cols > 50'000'000) {
    r.fail("matrix dimensions too large");
  }
  IntMatrix m(static_cast<int>(rows), static_cast<int>(cols));
  for (std::int64_t i = 0; i < rows; ++i) {
    if (!r.next(line)) r.fail_eof("expected " + std::to_string(rows) + " matrix rows");
    const auto toks = tokens_of(line);
    if (static_cast<std::int64_t>(toks.size()) != cols) {
      r.fail("expected " + std::to_string(cols) + " entries, got " +
             std::to_string(toks.size()));
    }
    for (std::int64_t j = 0; j < cols; ++j) {
      m.at(static_cast<int>(i), static_cast<int>(j)) = parse_entry(r, toks[j]);
    }
  }
  require_end(r, "matrix");
  return m;
}

void write_matrix(const IntMatrix& m, std::ostream& out) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m.at(i, j);
    }
    out << '\n';
  }
}

Fraction read_fraction(std::istream& in, const FactorialDesign& design,
                       const std::string& name) {
  LineReader r{in, name};
  std::string line;
  std::vector<std::int64_t> pts;
  while (r.next(line)) pts.push_back(parse_point(r, design, tokens_of(line)));
  try {
    return Fraction(design, std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw IoError(name + ": " + e.what());
  }
}

void write_fraction(const Fraction& fraction, std::ostream& out) {
  for (const std::int64_t p : fraction.points()) {
    const std::vector<int> tuple = fraction.design().point_tuple(p);
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      if (k) out << ' ';
      out << tuple[k];
    }
    out << '\n';
  }
}

std::vector<KernelVector> read_basis(std::istream& in, const std::string& name) {
  LineReader r{in, name};
  std::string line;
  if (!r.next(line)) r.fail_eof("missing basis header");
  const auto head = tokens_of(line);
  if (head.size() != 2) r.fail("basis header must be '<count> <K>'");
  const std::int64_t count = parse_dim(r, head[0]);
  const std::int64_t k = parse_dim(r, head[1]);
  std::vector<KernelVector> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<std::int64_t> v(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < count; ++i) {
    if (!r.next(line)) r.fail_eof("expected " + std::to_string(count) + " vectors");
    const auto toks = tokens_of(line);
    if (static_cast<std::int64_t>(toks.size()) != k) {
      r.fail("expected " + std::to_string(k) + " entries, got " +
             std::to_string(toks.size()));
    }
    for (std::int64_t j = 0; j < k; ++j) v[static_cast<std::size_t>(j)] = parse_i64(r, toks[j]);
    try {
      out.push_back(KernelVector::canonical(v));
    } catch (const std::invalid_argument& e) {
      r.fail(e.what());
    }
  }
  require_end(r, "basis");
  return out;
}

void write_basis(const std::vector<KernelVector>& vectors, std::ostream& out) {
  const int k = vectors.empty() ? 0 : vectors.front().size();
  out << vectors.size() << ' ' << k << '\n';
  for (const KernelVector& v : vectors) {
    for (int j = 0; j < v.size(); ++j) {
      if (j) out << ' ';
      out << v[j];
    }
    out << '\n';
  }
}

void SampleStreamWriter::metadata(const std::string& key, const std::string& value) {
  if (any_fraction_) throw std::logic_error("metadata must precede all fractions");
  out_ << "# " << key << ": " << value << '\n';
}

void SampleStreamWriter::add(const Fraction& fraction) {
  if (any_fraction_) out_ << "---\n";
  any_fraction_ = true;
  write_fraction(fraction, out_);
}

std::vector<Fraction> read_sample_stream(std::istream& in, const FactorialDesign& design,
                                         const std::string& name) {
  LineReader r{in, name};
  std::string line;
  std::vector<Fraction> out;
  std::vector<std::int64_t> pts;
  bool open = false;
  auto flush = [&]() {
    try {
      out.emplace_back(design, std::move(pts));
    } catch (const std::invalid_argument& e) {
      r.fail(e.what());
    }
    pts.clear();
    open = false;
  };
  while (r.next(line)) {
    if (trimmed(line) == "---") {
      if (!open) r.fail("separator without a preceding fraction");
      flush();
      continue;
    }
    open = true;
    pts.push_back(parse_point(r, design, tokens_of(line)));
  }
  if (open) {
    flush();
  } else if (!out.empty()) {
    r.fail("stream ends with a separator");
  }
  return out;
}

IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError(path + ": cannot open for reading");
  return read_matrix(f, path);
}

void write_matrix_file(const IntMatrix& m, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError(path + ": cannot open for writing");
  write_matrix(m, f);
  f.flush();
  if (!f) throw IoError(path + ": write failed");
}

Fraction read_fraction_file(const std::string& path, const FactorialDesign& design) {
  std::ifstream f(path);
  if (!f) throw IoError(path + ": cannot open for reading");
  return read_fraction(f, design, path);
}

void write_fraction_file(const Fraction& fraction, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError(path + ": cannot open for writing");
  write_fraction(fraction, f);
  f.flush();
  if (!f) throw IoError(path + ": write failed");
}

std::vector<KernelVector> read_basis_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError(path + ": cannot open for reading");
  return read_basis(f, path);
}

void write_basis_file(const std::vector<KernelVector>& vectors, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError(path + ": cannot open for writing");
  write_basis(vectors, f);
  f.flush();
  if (!f) throw IoError(path + ": write failed");
}

std::vector<Fraction> read_sample_stream_file(const std::string& path,
                                              const FactorialDesign& design) {
  std::ifstream f(path);
  if (!f) throw IoError(path + ": cannot open for reading");
  return read_sample_stream(f, design, path);
}

}  // namespace satfrac
