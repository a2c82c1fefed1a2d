#pragma once

#include <optional>
#include <string>

#include "satfrac/circuits.hpp"
#include "satfrac/graver.hpp"

namespace satfrac {

// On-disk store of computed bases keyed by the source matrix digest.
// Layout under the cache directory:
//   <digest>.circuits.txt / <digest>.circuits.json
//   <digest>.graver.txt   / <digest>.graver.json
// The .txt files hold the basis in the standard text format; the .json
// sidecar records dimensions, counts, and the tool version.  A hit
// reproduces the stored basis byte-identically (writes go through a
// temp-file rename, and loads cross-check the sidecar).
class BasisCache {
 public:
  explicit BasisCache(std::string directory);  // created when absent

  const std::string& directory() const { return dir_; }

  // Cache pointed at by SATFRAC_CACHE_DIR; nullopt when unset or empty.
  static std::optional<BasisCache> from_environment();

  std::optional<CircuitBasis> load_circuits(const std::string& digest) const;
  std::optional<GraverBasis> load_graver(const std::string& digest) const;

  void store_circuits(const CircuitBasis& basis) const;
  // Partial bases are not cacheable (a later caller could mistake one for
  // the full answer); throws invalid_argument when basis.complete is false.
  void store_graver(const GraverBasis& basis) const;

 private:
  std::string dir_;
};

}  // namespace satfrac
