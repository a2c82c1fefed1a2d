#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "satfrac/cache.hpp"
#include "satfrac/circuits.hpp"
#include "satfrac/design.hpp"
#include "satfrac/errors.hpp"
#include "satfrac/graver.hpp"
#include "satfrac/intmat.hpp"
#include "satfrac/io.hpp"

using satfrac::BasisCache;
using satfrac::CircuitBasis;
using satfrac::FactorialDesign;
using satfrac::GraverBasis;
using satfrac::GraverOptions;
using satfrac::IntMatrix;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("satfrac-cache-" +
                                                std::to_string(::getpid()) + "-" +
                                                std::to_string(counter++))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter;
};
int TempDir::counter = 0;

std::string basis_text(const std::vector<satfrac::KernelVector>& vectors) {
  std::ostringstream os;
  satfrac::write_basis(vectors, os);
  return os.str();
}

}  // namespace

TEST_CASE("circuit bases round-trip through the cache byte-for-byte") {
  const FactorialDesign d({2, 2, 2});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const CircuitBasis basis = enumerate_circuits(a);

  TempDir tmp;
  const BasisCache cache(tmp.path.string());
  CHECK_FALSE(cache.load_circuits(basis.source_digest).has_value());
  cache.store_circuits(basis);
  const auto loaded = cache.load_circuits(basis.source_digest);
  REQUIRE(loaded.has_value());
  CHECK(loaded->source_digest == basis.source_digest);
  CHECK(loaded->K == basis.K);
  CHECK(loaded->rank == basis.rank);
  CHECK(loaded->circuits == basis.circuits);
  CHECK(basis_text(loaded->circuits) == basis_text(basis.circuits));

  // The stored text file is exactly the standard serialization.
  std::ifstream f(tmp.path / (basis.source_digest + ".circuits.txt"));
  std::stringstream raw;
  raw << f.rdbuf();
  CHECK(raw.str() == basis_text(basis.circuits));

  // A different digest is a miss, not an error.
  CHECK_FALSE(cache.load_circuits(std::string(32, 'f')).has_value());
}

TEST_CASE("graver bases cache like circuits but partial results are refused") {
  const FactorialDesign d({2, 3});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const GraverBasis graver = graver_basis(a);

  TempDir tmp;
  const BasisCache cache(tmp.path.string());
  cache.store_graver(graver);
  const auto loaded = cache.load_graver(graver.source_digest);
  REQUIRE(loaded.has_value());
  CHECK(loaded->elements == graver.elements);
  CHECK(loaded->complete);

  GraverBasis partial = graver;
  partial.complete = false;
  CHECK_THROWS_AS(cache.store_graver(partial), std::invalid_argument);
}

TEST_CASE("the two basis kinds are stored under separate keys") {
  const FactorialDesign d({2, 3});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const CircuitBasis circuits = enumerate_circuits(a);

  TempDir tmp;
  const BasisCache cache(tmp.path.string());
  cache.store_circuits(circuits);
  // Same digest, other kind: still a miss.
  CHECK_FALSE(cache.load_graver(circuits.source_digest).has_value());
}

TEST_CASE("tampered sidecars are an error rather than silent corruption") {
  const FactorialDesign d({2, 3});
  const IntMatrix a = design_matrix(d, model_with_interactions(d, 2));
  const CircuitBasis basis = enumerate_circuits(a);

  TempDir tmp;
  const BasisCache cache(tmp.path.string());
  cache.store_circuits(basis);
  const fs::path meta = tmp.path / (basis.source_digest + ".circuits.json");
  std::ifstream in(meta);
  std::stringstream buf;
  buf << in.rdbuf();
  in.close();
  std::string text = buf.str();
  const std::string needle = "\"count\":";
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, needle.size() + 2, needle + " 9999");
  std::ofstream out(meta);
  out << text;
  out.close();
  CHECK_THROWS_AS(cache.load_circuits(basis.source_digest), satfrac::IoError);
}

TEST_CASE("from_environment reads SATFRAC_CACHE_DIR") {
  TempDir tmp;
  ::setenv("SATFRAC_CACHE_DIR", tmp.path.string().c_str(), 1);
  const auto cache = BasisCache::from_environment();
  REQUIRE(cache.has_value());
  CHECK(cache->directory() == tmp.path.string());
  ::unsetenv("SATFRAC_CACHE_DIR");
  CHECK_FALSE(BasisCache::from_environment().has_value());
}

TEST_CASE("invalid digests and directories are rejected up front") {
  TempDir tmp;
  const BasisCache cache(tmp.path.string());
  CHECK_THROWS_AS(cache.load_circuits(""), std::invalid_argument);
  CHECK_THROWS_AS(cache.load_circuits("../escape"), std::invalid_argument);
  CHECK_THROWS_AS(BasisCache(""), std::invalid_argument);
}