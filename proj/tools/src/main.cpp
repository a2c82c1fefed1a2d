// satfrac: characterize, count, and randomly generate saturated fractions
// of mixed-level factorial designs, exactly, via the circuits and Graver
// basis of the design matrix.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "satfrac/cache.hpp"
#include "satfrac/circuits.hpp"
#include "satfrac/design.hpp"
#include "satfrac/errors.hpp"
#include "satfrac/graver.hpp"
#include "satfrac/intmat.hpp"
#include "satfrac/io.hpp"
#include "satfrac/kernel_vector.hpp"
#include "satfrac/sampler.hpp"
#include "satfrac/saturation.hpp"
#include "satfrac/unimodular.hpp"
#include "satfrac/version.hpp"

namespace {

using json = nlohmann::json;
using namespace satfrac;

// Arguments shared by every command that needs a matrix: either a factorial
// design given as -l/--levels plus -o/--order, or an explicit matrix file.
struct MatrixArgs {
  std::vector<int> levels;
  int order = 2;
  std::string matrix_file;
};

void add_matrix_args(CLI::App* cmd, MatrixArgs& args, bool design_only = false) {
  cmd->add_option("-l,--levels", args.levels,
                  "factor level counts, comma separated (e.g. 2,2,2,2)")
      ->delimiter(',');
  cmd->add_option("-o,--order", args.order,
                  "largest interaction order in the model (default 2)");
  if (!design_only) {
    cmd->add_option("--matrix", args.matrix_file,
                    "design matrix file (alternative to -l/-o)")
        ->check(CLI::ExistingFile);
  }
}

FactorialDesign design_from(const MatrixArgs& args) {
  if (args.levels.empty()) {
    throw std::invalid_argument("this command needs a design: pass -l/--levels");
  }
  return FactorialDesign(args.levels);
}

// The design matrix A (model columns x design points) described by `args`.
IntMatrix matrix_from(const MatrixArgs& args) {
  if (!args.matrix_file.empty()) {
    if (!args.levels.empty()) {
      throw std::invalid_argument("pass either --matrix or -l/--levels, not both");
    }
    return read_matrix_file(args.matrix_file);
  }
  const FactorialDesign design = design_from(args);
  return design_matrix(design, model_with_interactions(design, args.order));
}

std::optional<BasisCache> open_cache(const std::string& flag_dir) {
  if (!flag_dir.empty()) return BasisCache(flag_dir);
  return BasisCache::from_environment();
}

// Loads circuits from the cache or computes (and stores) them.  `status`
// reports off / hit / miss for the run summary.
CircuitBasis cached_circuits(const IntMatrix& a, const std::optional<BasisCache>& cache,
                             const CircuitOptions& opts, std::string* status) {
  if (!cache) {
    *status = "off";
    return enumerate_circuits(a, opts);
  }
  const std::string digest = matrix_digest(a);
  if (std::optional<CircuitBasis> hit = cache->load_circuits(digest)) {
    *status = "hit";
    return std::move(*hit);
  }
  CircuitBasis basis = enumerate_circuits(a, opts);
  cache->store_circuits(basis);
  *status = "miss (stored)";
  return basis;
}

GraverBasis cached_graver(const IntMatrix& a, const std::optional<BasisCache>& cache,
                          const GraverOptions& opts, std::string* status) {
  if (!cache) {
    *status = "off";
    return graver_basis(a, opts);
  }
  const std::string digest = matrix_digest(a);
  if (std::optional<GraverBasis> hit = cache->load_graver(digest)) {
    *status = "hit";
    return std::move(*hit);
  }
  GraverBasis basis = graver_basis(a, opts);
  if (basis.complete) cache->store_graver(basis);
  *status = basis.complete ? "miss (stored)" : "miss (partial result not stored)";
  return basis;
}

std::string join_sizes(const std::vector<VectorClass>& classes) {
  std::ostringstream out;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i) out << ',';
    out << classes[i].size;
  }
  return out.str();
}

std::string vector_text(const KernelVector& v) {
  std::ostringstream out;
  for (int i = 0; i < v.size(); ++i) {
    if (i) out << ' ';
    out << v[i];
  }
  return out.str();
}

json vector_json(const KernelVector& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json classes_json(const std::vector<VectorClass>& classes) {
  json arr = json::array();
  for (const VectorClass& c : classes) {
    arr.push_back({{"size", c.size},
                   {"support", c.representative.support_size()},
                   {"max_abs", c.representative.max_abs()},
                   {"representative", vector_json(c.representative)}});
  }
  return arr;
}

// Counts can exceed 64 bits on large designs, so they are emitted as
// decimal strings in JSON.
std::string int_str(const Int& v) { return v.str(); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// Writes `text` to `path`, or to standard out when path is "-" or empty.
void write_text_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << text;
  if (!out.flush()) throw IoError(path + ": write failed");
}

// ---------------------------------------------------------------------------
// matrix: emit the model matrix (rows = design points) and its transpose.

struct MatrixCmd {
  MatrixArgs src;
  std::string model_out;
  std::string design_out;
  bool json_out = false;

  int run() const {
    const FactorialDesign design = design_from(src);
    const ModelSpec model = model_with_interactions(design, src.order);
    const IntMatrix x = build_model_matrix(design, model);
    const IntMatrix a = x.transposed();
    const int r = rank(a);

    if (!model_out.empty()) write_matrix_file(x, model_out);
    if (!design_out.empty()) write_matrix_file(a, design_out);

    if (json_out) {
      emit(json{{"K", x.rows()},
                {"p", x.cols()},
                {"rank", r},
                {"digest", matrix_digest(a)}});
      return 0;
    }
    if (model_out.empty() && design_out.empty()) {
      // Model matrix to stdout; the summary rides along as a comment so the
      // output stays machine-readable.
      std::cout << "# K=" << x.rows() << " p=" << x.cols() << " rank=" << r << "\n";
      write_matrix(x, std::cout);
    } else {
      std::cout << "K=" << x.rows() << " p=" << x.cols() << " rank=" << r << "\n";
    }
    return 0;
  }
};

// ---------------------------------------------------------------------------
// circuits: enumerate, classify, optionally filter and write.

struct CircuitsCmd {
  MatrixArgs src;
  std::string cache_dir;
  std::string out;
  int threads = 1;
  int max_support = 0;
  std::int64_t max_circuits = 0;
  bool list_classes = false;
  bool json_out = false;

  int run() const {
    const IntMatrix a = matrix_from(src);
    CircuitOptions opts;
    opts.threads = threads;
    opts.max_circuits = max_circuits;
    std::string cache_status;
    const CircuitBasis basis = cached_circuits(a, open_cache(cache_dir), opts, &cache_status);
    const std::vector<VectorClass> classes = value_pattern_classes(basis.circuits);

    std::optional<std::vector<KernelVector>> listed;
    if (max_support > 0) {
      listed = filter_by_support_size(basis.circuits, max_support);
    }
    if (!out.empty()) {
      std::ostringstream text;
      write_basis(listed ? *listed : basis.circuits, text);
      write_text_output(out, text.str());
    }

    if (json_out) {
      json j{{"count", basis.circuits.size()},
             {"classes", classes_json(classes)},
             {"cache", cache_status},
             {"digest", basis.source_digest}};
      if (listed) j["listed"] = listed->size();
      emit(j);
      return 0;
    }
    std::cout << "circuits: " << basis.circuits.size() << "\n";
    std::cout << "classes: " << join_sizes(classes) << "\n";
    if (listed) std::cout << "listed: " << listed->size() << "\n";
    if (list_classes) {
      for (const VectorClass& c : classes) {
        std::cout << "class: size=" << c.size << " support=" << c.representative.support_size()
                  << " max=" << c.representative.max_abs()
                  << " rep=" << vector_text(c.representative) << "\n";
      }
    }
    std::cout << "cache: " << cache_status << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// check: saturation verdict for one fraction.

struct CheckCmd {
  MatrixArgs src;
  std::string fraction_file;
  std::string method = "circuits";
  std::string cache_dir;
  int threads = 1;
  bool json_out = false;

  int run() const {
    const FactorialDesign design = design_from(src);
    const IntMatrix a = design_matrix(design, model_with_interactions(design, src.order));
    const Fraction fraction = read_fraction_file(fraction_file, design);

    std::optional<SaturationReport> by_circuits;
    std::optional<SaturationReport> by_det;
    std::string cache_status = "off";
    if (method == "circuits" || method == "both") {
      CircuitOptions opts;
      opts.threads = threads;
      const CircuitBasis basis =
          cached_circuits(a, open_cache(cache_dir), opts, &cache_status);
      by_circuits = is_saturated_by_circuits(fraction, basis);
    }
    if (method == "det" || method == "both") {
      by_det = is_saturated_by_determinant(fraction, a);
    }
    if (!by_circuits && !by_det) {
      throw std::invalid_argument("--method must be circuits, det or both");
    }
    if (by_circuits && by_det && by_circuits->saturated != by_det->saturated) {
      // The two routes are equivalent by construction; disagreement means a
      // bug, not a property of the input.
      std::cerr << "internal error: circuit and determinant verdicts disagree\n";
      return 1;
    }

    const bool saturated = by_circuits ? by_circuits->saturated : by_det->saturated;
    if (json_out) {
      json j{{"saturated", saturated}, {"method", method}};
      if (by_circuits && by_circuits->blocking_circuit) {
        j["witness"] = vector_json(*by_circuits->blocking_circuit);
      }
      if (by_det && by_det->determinant) j["determinant"] = int_str(*by_det->determinant);
      if (by_circuits && by_det) j["agreement"] = true;
      emit(j);
      return 0;
    }
    std::cout << "method: " << method << "\n";
    std::cout << "verdict: " << (saturated ? "SATURATED" : "NOT SATURATED") << "\n";
    if (by_circuits && by_circuits->blocking_circuit) {
      const KernelVector& w = *by_circuits->blocking_circuit;
      std::cout << "witness: " << vector_text(w) << " (support " << w.support_size()
                << ", contained in the fraction)\n";
    }
    if (by_det && by_det->determinant) {
      std::cout << "determinant: " << int_str(*by_det->determinant) << "\n";
    }
    if (by_circuits && by_det) std::cout << "agreement: true\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// count: saturated / non-saturated census over all rank-size subsets.

struct CountCmd {
  MatrixArgs src;
  std::string method = "det";
  std::string cache_dir;
  int threads = 1;
  std::int64_t max_subsets = 0;
  bool json_out = false;

  int run() const {
    const IntMatrix a = matrix_from(src);
    CountOptions opts;
    opts.threads = threads;
    opts.max_subsets = max_subsets;

    std::optional<SaturationCounts> by_det;
    std::optional<SaturationCounts> by_circuits;
    std::string cache_status = "off";
    if (method == "det" || method == "both") by_det = count_saturated(a, opts);
    if (method == "circuits" || method == "both") {
      CircuitOptions copts;
      copts.threads = threads;
      const CircuitBasis basis =
          cached_circuits(a, open_cache(cache_dir), copts, &cache_status);
      by_circuits = count_saturated_by_circuits(a, basis, opts);
    }
    if (!by_det && !by_circuits) {
      throw std::invalid_argument("--method must be circuits, det or both");
    }
    if (by_det && by_circuits &&
        (by_det->saturated != by_circuits->saturated || by_det->total != by_circuits->total)) {
      std::cerr << "internal error: circuit and determinant counts disagree\n";
      return 1;
    }

    const SaturationCounts& counts = by_det ? *by_det : *by_circuits;
    if (json_out) {
      emit(json{{"total", int_str(counts.total)},
                {"saturated", int_str(counts.saturated)},
                {"non_saturated", int_str(counts.non_saturated)},
                {"method", method}});
      return 0;
    }
    std::cout << int_str(counts.total) << " total / " << int_str(counts.saturated)
              << " saturated / " << int_str(counts.non_saturated) << " not\n";
    std::cout << "method: " << method << "\n";
    if (by_det && by_circuits) std::cout << "agreement: true\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// graver: Graver basis with classification.

struct GraverCmd {
  MatrixArgs src;
  std::string cache_dir;
  std::string out;
  int threads = 1;
  std::int64_t max_elements = 0;
  std::int64_t max_pair_ops = 0;
  bool allow_partial = false;
  bool cold_start = false;
  bool json_out = false;

  int run() const {
    const IntMatrix a = matrix_from(src);
    GraverOptions opts;
    opts.threads = threads;
    opts.warm_start_with_circuits = !cold_start;
    opts.max_elements = max_elements;
    opts.max_pair_ops = max_pair_ops;
    opts.allow_partial = allow_partial;
    std::string cache_status;
    const GraverBasis basis = cached_graver(a, open_cache(cache_dir), opts, &cache_status);
    const std::vector<VectorClass> classes = value_pattern_classes(basis.elements);

    if (!out.empty()) {
      std::ostringstream text;
      write_basis(basis.elements, text);
      write_text_output(out, text.str());
    }
    if (json_out) {
      emit(json{{"count", basis.elements.size()},
                {"classes", classes_json(classes)},
                {"complete", basis.complete},
                {"cache", cache_status},
                {"digest", basis.source_digest}});
      return 0;
    }
    std::cout << "graver: " << basis.elements.size() << "\n";
    std::cout << "classes: " << join_sizes(classes) << "\n";
    std::cout << "complete: " << (basis.complete ? "true" : "false") << "\n";
    std::cout << "cache: " << cache_status << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// unimodular: equal-magnitude maximal minors and total unimodularity.

const char* tri_text(Tri t) {
  switch (t) {
    case Tri::kTrue: return "true";
    case Tri::kFalse: return "false";
    default: return "unknown (work budget exhausted)";
  }
}

std::string minor_text(const MinorCertificate& m) {
  std::ostringstream out;
  out << "|det|=" << (m.value < 0 ? -m.value : m.value) << " rows=[";
  for (std::size_t i = 0; i < m.rows.size(); ++i) out << (i ? "," : "") << m.rows[i];
  out << "] cols=[";
  for (std::size_t i = 0; i < m.cols.size(); ++i) out << (i ? "," : "") << m.cols[i];
  out << "]";
  return out.str();
}

struct UnimodularCmd {
  MatrixArgs src;
  std::int64_t max_work = 50'000'000;
  bool json_out = false;

  int run() const {
    const IntMatrix a = matrix_from(src);
    UnimodularOptions opts;
    opts.max_work = max_work;
    const UnimodularityReport uni = is_unimodular(a, opts);
    const UnimodularityReport tu = is_totally_unimodular(a, opts);

    if (json_out) {
      json j{{"unimodular", tri_text(uni.unimodular)},
             {"totally_unimodular", tri_text(tu.totally_unimodular)}};
      if (uni.minor_magnitude) j["minor_magnitude"] = int_str(*uni.minor_magnitude);
      emit(j);
      return 0;
    }
    std::cout << "unimodular: " << tri_text(uni.unimodular) << "\n";
    std::cout << "totally_unimodular: " << tri_text(tu.totally_unimodular) << "\n";
    if (uni.minor_magnitude) {
      std::cout << "minor_magnitude: " << int_str(*uni.minor_magnitude) << "\n";
    }
    if (uni.reference_minor) {
      std::cout << "reference_minor: " << minor_text(*uni.reference_minor) << "\n";
    }
    if (uni.violating_minor) {
      std::cout << "violating_minor: " << minor_text(*uni.violating_minor) << "\n";
    }
    return 0;
  }
};

// ---------------------------------------------------------------------------
// sample: margin-preserving chain (default) or rejection sampling.

struct SampleCmd {
  MatrixArgs src;
  std::string mode = "chain";
  std::string margins_from;
  std::string out;
  std::string cache_dir;
  std::int64_t samples = 1;
  std::uint64_t seed = 0;
  std::int64_t burn_in = 1000;
  std::int64_t thin = 10;
  std::int64_t max_steps = 0;
  std::int64_t max_draws = 0;
  int threads = 1;
  bool keep_all = false;
  bool json_out = false;

  int run() const {
    const FactorialDesign design = design_from(src);
    const IntMatrix a = design_matrix(design, model_with_interactions(design, src.order));
    CircuitOptions copts;
    copts.threads = threads;
    std::string cache_status;
    const CircuitBasis basis = cached_circuits(a, open_cache(cache_dir), copts, &cache_status);

    if (json_out && (out.empty() || out == "-")) {
      throw std::invalid_argument("--json needs --out FILE so the sample stream has a home");
    }
    std::ofstream file;
    if (!out.empty() && out != "-") {
      file.open(out);
      if (!file) throw IoError(out + ": cannot open for writing");
    }
    std::ostream& stream = file.is_open() ? file : std::cout;
    SampleStreamWriter writer(stream);

    std::ostringstream levels_text;
    for (std::size_t i = 0; i < src.levels.size(); ++i) {
      levels_text << (i ? "," : "") << src.levels[i];
    }
    writer.metadata("tool", std::string("satfrac ") + kVersion);
    writer.metadata("mode", mode);
    writer.metadata("levels", levels_text.str());
    writer.metadata("order", std::to_string(src.order));
    writer.metadata("seed", std::to_string(seed));

    json stats;
    if (mode == "chain") {
      if (margins_from.empty()) {
        throw std::invalid_argument("chain mode needs --margins-from START.frac");
      }
      const Fraction start = read_fraction_file(margins_from, design);
      const MoveSet moves = universal_moves(margin_matrix(design), CircuitOptions{});
      ChainConfig cfg;
      cfg.seed = seed;
      cfg.samples = samples;
      cfg.burn_in = burn_in;
      cfg.thin = thin;
      cfg.require_saturated = !keep_all;
      cfg.max_steps = max_steps;
      writer.metadata("burn_in", std::to_string(burn_in));
      writer.metadata("thin", std::to_string(thin));
      writer.metadata("samples", std::to_string(samples));
      const ChainStats st = sample_saturated(start, basis, moves, cfg,
                                             [&](const Fraction& f) { writer.add(f); });
      stats = json{{"steps", st.steps},
                   {"moved", st.moved},
                   {"candidates", st.candidates},
                   {"emitted", st.emitted},
                   {"rejected_non_saturated", st.rejected_non_saturated}};
    } else if (mode == "rejection") {
      writer.metadata("samples", std::to_string(samples));
      Rng rng(seed);
      const RejectionStats st =
          random_psubset_sample(design, basis, samples, rng,
                                [&](const Fraction& f) { writer.add(f); }, max_draws);
      stats = json{{"draws", st.draws}, {"accepted", st.accepted}};
    } else {
      throw std::invalid_argument("--mode must be chain or rejection");
    }

    if (json_out) {
      stats["mode"] = mode;
      stats["seed"] = seed;
      stats["cache"] = cache_status;
      emit(stats);
    } else {
      std::cerr << "done:";
      for (const auto& [key, value] : stats.items()) {
        std::cerr << " " << key << "=" << value;
      }
      std::cerr << "\n";
    }
    return 0;
  }
};

// ---------------------------------------------------------------------------
// ilp: 0/1 feasibility program whose solutions are the saturated fractions.

struct IlpCmd {
  MatrixArgs src;
  std::string cache_dir;
  std::string out;
  int threads = 1;
  bool json_out = false;

  int run() const {
    const IntMatrix a = matrix_from(src);
    CircuitOptions opts;
    opts.threads = threads;
    std::string cache_status;
    const CircuitBasis basis = cached_circuits(a, open_cache(cache_dir), opts, &cache_status);
    std::ostringstream text;
    export_ilp(basis, basis.rank, text);
    write_text_output(out, text.str());
    if (json_out) {
      emit(json{{"circuits", basis.circuits.size()}, {"p", basis.rank}, {"cache", cache_status}});
    }
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"saturated fractions of factorial designs via circuits and Graver bases"};
  app.set_version_flag("--version", std::string("satfrac ") + kVersion);
  app.require_subcommand(1);

  MatrixCmd matrix_cmd;
  CLI::App* matrix = app.add_subcommand("matrix", "emit the model matrix and its transpose");
  add_matrix_args(matrix, matrix_cmd.src, /*design_only=*/true);
  matrix->add_option("--out", matrix_cmd.model_out, "model matrix output file");
  matrix->add_option("--design-out", matrix_cmd.design_out, "design matrix (transpose) output file");
  matrix->add_flag("--json", matrix_cmd.json_out, "machine-readable summary");

  CircuitsCmd circuits_cmd;
  CLI::App* circuits = app.add_subcommand("circuits", "enumerate and classify circuits");
  add_matrix_args(circuits, circuits_cmd.src);
  circuits->add_option("--cache", circuits_cmd.cache_dir, "basis cache directory");
  circuits->add_option("--out", circuits_cmd.out, "write the basis here ('-' = stdout)");
  circuits->add_option("--threads", circuits_cmd.threads, "worker threads");
  circuits->add_option("--max-support", circuits_cmd.max_support,
                       "only list circuits with support size <= N");
  circuits->add_option("--max-circuits", circuits_cmd.max_circuits,
                       "abort beyond this many circuits (0 = unlimited)");
  circuits->add_flag("--list-classes", circuits_cmd.list_classes, "print one line per class");
  circuits->add_flag("--json", circuits_cmd.json_out, "machine-readable summary");

  CheckCmd check_cmd;
  CLI::App* check = app.add_subcommand("check", "saturation verdict for a fraction");
  add_matrix_args(check, check_cmd.src, /*design_only=*/true);
  check->add_option("--fraction", check_cmd.fraction_file, "fraction file (level tuples)")
      ->required()
      ->check(CLI::ExistingFile);
  check->add_option("--method", check_cmd.method, "circuits | det | both");
  check->add_option("--cache", check_cmd.cache_dir, "basis cache directory");
  check->add_option("--threads", check_cmd.threads, "worker threads");
  check->add_flag("--json", check_cmd.json_out, "machine-readable verdict");

  CountCmd count_cmd;
  CLI::App* count = app.add_subcommand("count", "count saturated rank-size fractions");
  add_matrix_args(count, count_cmd.src);
  count->add_option("--method", count_cmd.method, "det | circuits | both");
  count->add_option("--cache", count_cmd.cache_dir, "basis cache directory");
  count->add_option("--threads", count_cmd.threads, "worker threads");
  count->add_option("--max-subsets", count_cmd.max_subsets,
                    "guard for the explicit-subset route (0 = unlimited)");
  count->add_flag("--json", count_cmd.json_out, "machine-readable counts");

  GraverCmd graver_cmd;
  CLI::App* graver = app.add_subcommand("graver", "compute the Graver basis");
  add_matrix_args(graver, graver_cmd.src);
  graver->add_option("--cache", graver_cmd.cache_dir, "basis cache directory");
  graver->add_option("--out", graver_cmd.out, "write the basis here ('-' = stdout)");
  graver->add_option("--threads", graver_cmd.threads, "worker threads");
  graver->add_option("--max-elements", graver_cmd.max_elements,
                     "abort beyond this many elements (0 = unlimited)");
  graver->add_option("--max-pair-ops", graver_cmd.max_pair_ops,
                     "abort beyond this many completion pairs (0 = unlimited)");
  graver->add_flag("--allow-partial", graver_cmd.allow_partial,
                   "return what was found when a guard trips");
  graver->add_flag("--cold", graver_cmd.cold_start,
                   "seed the completion with a lattice basis only (no circuits)");
  graver->add_flag("--json", graver_cmd.json_out, "machine-readable summary");

  UnimodularCmd unimodular_cmd;
  CLI::App* unimodular = app.add_subcommand("unimodular", "equal-magnitude minor test");
  add_matrix_args(unimodular, unimodular_cmd.src);
  unimodular->add_option("--max-work", unimodular_cmd.max_work,
                         "node budget before reporting unknown (0 = unlimited)");
  unimodular->add_flag("--json", unimodular_cmd.json_out, "machine-readable report");

  SampleCmd sample_cmd;
  CLI::App* sample = app.add_subcommand("sample", "generate random saturated fractions");
  add_matrix_args(sample, sample_cmd.src, /*design_only=*/true);
  sample->add_option("--mode", sample_cmd.mode, "chain | rejection (default chain)");
  sample->add_option("--margins-from", sample_cmd.margins_from,
                     "start fraction fixing the one-way margins (chain mode)")
      ->check(CLI::ExistingFile);
  sample->add_option("-n,--samples", sample_cmd.samples, "fractions to emit");
  sample->add_option("--seed", sample_cmd.seed, "random seed (part of the output contract)");
  sample->add_option("--burn-in", sample_cmd.burn_in, "steps discarded up front");
  sample->add_option("--thin", sample_cmd.thin, "steps between candidates");
  sample->add_option("--steps", sample_cmd.max_steps, "abort after this many steps (0 = unlimited)");
  sample->add_option("--max-draws", sample_cmd.max_draws,
                     "rejection mode: abort after this many draws (0 = unlimited)");
  sample->add_option("--out", sample_cmd.out, "sample stream file ('-' = stdout)");
  sample->add_option("--cache", sample_cmd.cache_dir, "basis cache directory");
  sample->add_option("--threads", sample_cmd.threads, "worker threads");
  sample->add_flag("--keep-all", sample_cmd.keep_all,
                   "emit every candidate, not just saturated ones");
  sample->add_flag("--json", sample_cmd.json_out, "stats as JSON (requires --out)");

  IlpCmd ilp_cmd;
  CLI::App* ilp = app.add_subcommand("ilp", "export the saturation feasibility program");
  add_matrix_args(ilp, ilp_cmd.src);
  ilp->add_option("--cache", ilp_cmd.cache_dir, "basis cache directory");
  ilp->add_option("--out", ilp_cmd.out, "LP file ('-' = stdout)");
  ilp->add_option("--threads", ilp_cmd.threads, "worker threads");
  ilp->add_flag("--json", ilp_cmd.json_out, "print a summary after the export");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (matrix->parsed()) return matrix_cmd.run();
    if (circuits->parsed()) return circuits_cmd.run();
    if (check->parsed()) return check_cmd.run();
    if (count->parsed()) return count_cmd.run();
    if (graver->parsed()) return graver_cmd.run();
    if (unimodular->parsed()) return unimodular_cmd.run();
    if (sample->parsed()) return sample_cmd.run();
    if (ilp->parsed()) return ilp_cmd.run();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
