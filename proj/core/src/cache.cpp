#include "satfrac/cache.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "satfrac/errors.hpp"
#include "satfrac/io.hpp"
#include "satfrac/version.hpp"

namespace satfrac {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string entry_stem(const std::string& dir, const std::string& digest, const char* kind) {
  return (fs::path(dir) / (digest + "." + kind)).string();
}

// Digest strings become file names; refuse anything that could escape the
// cache directory or collide with the suffix scheme.
void check_digest(const std::string& digest) {
  if (digest.empty() ||
      !std::all_of(digest.begin(), digest.end(),
                   [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); })) {
    throw std::invalid_argument("cache digest must be a nonempty hex string");
  }
}

json read_meta(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError(path + ": cannot open for reading");
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_text_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw IoError(tmp + ": cannot open for writing");
    f << text;
    f.flush();
    if (!f) throw IoError(tmp + ": write failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError(path + ": rename failed: " + ec.message());
}

std::string basis_text(const std::vector<KernelVector>& vectors) {
  std::ostringstream ss;
  write_basis(vectors, ss);
  return ss.str();
}

// Shared load path: checks both files exist, validates the sidecar against
// the basis file, and hands back (meta, vectors).
std::optional<std::pair<json, std::vector<KernelVector>>> load_entry(
    const std::string& stem, const std::string& digest, const char* kind) {
  const std::string txt = stem + ".txt";
  const std::string meta_path = stem + ".json";
  if (!fs::exists(txt) || !fs::exists(meta_path)) return std::nullopt;
  const json meta = read_meta(meta_path);
  std::vector<KernelVector> vectors = read_basis_file(txt);
  const auto want = [&](const char* key) -> std::int64_t {
    if (!meta.contains(key) || !meta[key].is_number_integer()) {
      throw IoError(meta_path + ": missing integer field '" + key + "'");
    }
    return meta[key].get<std::int64_t>();
  };
  if (!meta.contains("kind") || meta["kind"] != kind) {
    throw IoError(meta_path + ": wrong entry kind");
  }
  if (meta.contains("digest") && meta["digest"] != digest) {
    throw IoError(meta_path + ": digest mismatch");
  }
  if (want("count") != static_cast<std::int64_t>(vectors.size())) {
    throw IoError(meta_path + ": count does not match the basis file");
  }
  const std::int64_t k = want("K");
  for (const KernelVector& v : vectors) {
    if (v.size() != k) throw IoError(txt + ": vector length does not match metadata");
  }
  if (!std::is_sorted(vectors.begin(), vectors.end(), canonical_less)) {
    throw IoError(txt + ": vectors out of canonical order");
  }
  return std::make_pair(meta, std::move(vectors));
}

json base_meta(const char* kind, const std::string& digest, int k, int rank,
               std::size_t count) {
  json meta;
  meta["kind"] = kind;
  meta["digest"] = digest;
  meta["K"] = k;
  meta["rank"] = rank;
  meta["count"] = count;
  meta["version"] = kVersion;
  return meta;
}

}  // namespace

BasisCache::BasisCache(std::string directory) : dir_(std::move(directory)) {
  if (dir_.empty()) throw std::invalid_argument("cache directory must not be empty");
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError(dir_ + ": cannot create cache directory: " + ec.message());
}

std::optional<BasisCache> BasisCache::from_environment() {
  const char* dir = std::getenv("SATFRAC_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return BasisCache(dir);
}

std::optional<CircuitBasis> BasisCache::load_circuits(const std::string& digest) const {
  check_digest(digest);
  auto entry = load_entry(entry_stem(dir_, digest, "circuits"), digest, "circuits");
  if (!entry) return std::nullopt;
  CircuitBasis basis;
  basis.source_digest = digest;
  basis.K = entry->first["K"].get<int>();
  basis.rank = entry->first["rank"].get<int>();
  basis.circuits = std::move(entry->second);
  return basis;
}

std::optional<GraverBasis> BasisCache::load_graver(const std::string& digest) const {
  check_digest(digest);
  auto entry = load_entry(entry_stem(dir_, digest, "graver"), digest, "graver");
  if (!entry) return std::nullopt;
  GraverBasis basis;
  basis.source_digest = digest;
  basis.K = entry->first["K"].get<int>();
  basis.rank = entry->first["rank"].get<int>();
  basis.complete = true;
  basis.elements = std::move(entry->second);
  return basis;
}

void BasisCache::store_circuits(const CircuitBasis& basis) const {
  check_digest(basis.source_digest);
  const std::string stem = entry_stem(dir_, basis.source_digest, "circuits");
  const json meta = base_meta("circuits", basis.source_digest, basis.K, basis.rank,
                              basis.circuits.size());
  write_text_atomically(stem + ".txt", basis_text(basis.circuits));
  write_text_atomically(stem + ".json", meta.dump(2) + "\n");
}

void BasisCache::store_graver(const GraverBasis& basis) const {
  if (!basis.complete) throw std::invalid_argument("refusing to cache a partial basis");
  check_digest(basis.source_digest);
  const std::string stem = entry_stem(dir_, basis.source_digest, "graver");
  const json meta = base_meta("graver", basis.source_digest, basis.K, basis.rank,
                              basis.elements.size());
  write_text_atomically(stem + ".txt", basis_text(basis.elements));
  write_text_atomically(stem + ".json", meta.dump(2) + "\n");
}

}  // namespace satfrac
