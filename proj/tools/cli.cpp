#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nestalg/decomposition.hpp"
#include "nestalg/errors.hpp"
#include "nestalg/extraction.hpp"
#include "nestalg/flatten.hpp"
#include "nestalg/generators.hpp"
#include "nestalg/matrix_io.hpp"
#include "nestalg/ordinal_nests.hpp"
#include "nestalg/random.hpp"

namespace nestalg::cli {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kExitInfeasible = 2;

struct OutputOptions {
  std::string out;
  std::string manifest;
  std::string format = "csv";
};

void add_output_options(CLI::App* cmd, OutputOptions& o, bool with_format) {
  cmd->add_option("--out", o.out, "Write the result here instead of stdout");
  cmd->add_option("--manifest", o.manifest,
                  "Manifest path (default: <out>.manifest.json)");
  if (with_format) {
    cmd->add_option("--format", o.format, "Table format")
        ->check(CLI::IsMember({"csv", "json"}));
  }
}

std::optional<fs::path> default_dir() {
  const char* dir = std::getenv("NESTALG_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return fs::path(dir);
}

void write_file(const fs::path& path, const std::string& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open " + path.string() + " for writing");
  f << body;
}

// Writes `body` to --out, to $NESTALG_OUT_DIR/<command>.<ext>, or to stdout,
// plus a manifest next to any file output.
std::optional<fs::path> emit(const std::string& command, const std::string& ext,
                             const std::string& body, const json& config,
                             const OutputOptions& o, std::ostream& out) {
  std::optional<fs::path> target;
  if (!o.out.empty()) {
    target = fs::path(o.out);
  } else if (auto dir = default_dir()) {
    target = *dir / (command + "." + ext);
  }
  if (!target) {
    out << body;
  } else {
    write_file(*target, body);
  }
  fs::path manifest_path;
  if (!o.manifest.empty()) {
    manifest_path = o.manifest;
  } else if (target) {
    manifest_path = target->string() + ".manifest.json";
  }
  if (!manifest_path.empty()) {
    json manifest;
    manifest["tool"] = "nestalg";
    manifest["version"] = NESTALG_VERSION_STRING;
    manifest["command"] = command;
    manifest["config"] = config;
    manifest["output"] = target ? json(target->string()) : json("stdout");
    write_file(manifest_path, manifest.dump(2) + "\n");
  }
  return target;
}

std::string fmt(double x) { return format_double(x); }

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::vector<Index> doubling_sizes(Index lo, Index hi) {
  if (lo < 1 || hi < lo) throw InputError("need 1 <= --min <= --max");
  std::vector<Index> sizes;
  for (Index n = lo; n <= hi; n *= 2) sizes.push_back(n);
  return sizes;
}

// Table with a header row; rendered as CSV or as one JSON record per line.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;

  std::string render(const std::string& format) const {
    std::ostringstream s;
    if (format == "json") {
      for (const auto& row : rows) {
        json rec;
        for (std::size_t c = 0; c < header.size(); ++c) rec[header[c]] = row[c];
        s << rec.dump() << '\n';
      }
      return s.str();
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      s << (c ? "," : "") << header[c];
    }
    s << '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        s << (c ? "," : "");
        const json& v = row[c];
        if (v.is_null()) {
          s << "nan";
        } else if (v.is_number_float()) {
          s << fmt(v.get<double>());
        } else if (v.is_string()) {
          s << v.get<std::string>();
        } else {
          s << v.dump();
        }
      }
      s << '\n';
    }
    return s.str();
  }
};

// ---------------------------------------------------------------------------

struct NormsArgs {
  std::string input;
  std::vector<std::string> ps{"1", "2", "inf"};
  OutputOptions o;
};

int run_norms(const NormsArgs& a, std::ostream& out) {
  const ComplexMatrix m = load_cmx(a.input);
  const SingularSpectrum spectrum = singular_values(m);
  Table t{{"p", "norm"}, {}};
  for (const auto& p : a.ps) {
    const double value = p == "inf" ? kInfinity : parse_double(p);
    t.rows.push_back({p, schatten_norm(spectrum, value)});
  }
  json config{{"input", a.input}, {"p", a.ps}, {"format", a.o.format}};
  emit("norms", a.o.format, t.render(a.o.format), config, a.o, out);
  return 0;
}

// ---------------------------------------------------------------------------

struct MapArgs {
  std::string generator = "transpose";
  std::string multiplier_file;
  Index N = 64;
  double lambda = 0.5;
  double lambda_im = 0.0;
  double perturbation = 0.0;
  double scale = 1.0;
};

void add_map_options(CLI::App* cmd, MapArgs& m) {
  cmd->add_option("--generator", m.generator, "Built-in map")
      ->check(CLI::IsMember({"identity", "transpose", "multiplier",
                             "random-contraction"}));
  cmd->add_option("--multiplier-file", m.multiplier_file,
                  "cmx file of Schur multiplier coefficients");
  cmd->add_option("--N", m.N, "Dimension of the map")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", m.lambda, "Planted multiplier value (real part)");
  cmd->add_option("--lambda-im", m.lambda_im, "Planted multiplier value (imaginary part)");
  cmd->add_option("--perturbation", m.perturbation,
                  "Entrywise perturbation radius of the planted multiplier");
  cmd->add_option("--scale", m.scale, "Scale of the identity generator");
}

std::unique_ptr<MatrixMap> make_map(const MapArgs& m, std::uint64_t seed) {
  if (!m.multiplier_file.empty()) {
    return std::make_unique<SchurMultiplierMap>(load_cmx(m.multiplier_file));
  }
  if (m.generator == "identity") {
    return std::make_unique<ScaledIdentityMap>(m.N, m.scale);
  }
  if (m.generator == "transpose") return std::make_unique<TransposeMap>(m.N);
  if (m.generator == "multiplier") {
    return std::make_unique<SchurMultiplierMap>(planted_multiplier(
        m.N, {m.lambda, m.lambda_im}, m.perturbation, seed));
  }
  return std::make_unique<TwoSidedMap>(random_contraction(m.N, seed));
}

json map_config(const MapArgs& m) {
  json c;
  if (!m.multiplier_file.empty()) {
    c["multiplier_file"] = m.multiplier_file;
    return c;
  }
  c["generator"] = m.generator;
  c["N"] = m.N;
  if (m.generator == "multiplier") {
    c["lambda"] = {m.lambda, m.lambda_im};
    c["perturbation"] = m.perturbation;
  }
  if (m.generator == "identity") c["scale"] = m.scale;
  return c;
}

struct ExtractArgs {
  MapArgs map;
  Index n = 2;
  double epsilon = 0.1;
  std::string mode = "strict";
  std::uint64_t seed = 0;
  ExtractionBudget budget;
  OutputOptions o;
};

void add_extract_options(CLI::App* cmd, ExtractArgs& a) {
  cmd->add_option("--n", a.n, "Size of the scalar block")->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", a.epsilon, "Residual tolerance");
  cmd->add_option("--mode", a.mode, "Interleaving of sigma and psi")
      ->check(CLI::IsMember({"strict", "weak"}));
  cmd->add_option("--seed", a.seed, "Seed for generators and estimators");
  cmd->add_option("--K", a.budget.K, "Bound on the map norm");
  cmd->add_option("--max-survivors", a.budget.max_survivors, "Survivor window");
  cmd->add_option("--restarts", a.budget.restarts, "Residual estimator restarts");
}

int run_extract(ExtractArgs a, std::ostream& out, std::ostream& err) {
  const auto phi = make_map(a.map, a.seed);
  a.budget.seed = a.seed;
  const ExtractionResult r = find_scalar_compression(
      *phi, a.n, a.epsilon, parse_interleave_mode(a.mode), a.budget);
  json cert = json::parse(certificate_json(r));
  cert["map"] = map_config(a.map);
  if (r.success) {
    cert["verified_residual"] =
        certificate_residual(*phi, r, a.budget.restarts, a.seed + 1);
    if (a.epsilon < 0.5) {
      const DichotomyReport d = select_invertible(*phi, r, a.budget.restarts, a.seed + 2);
      cert["dichotomy"] = {{"uses_complement", d.uses_complement},
                           {"scalar", {d.scalar.real(), d.scalar.imag()}},
                           {"min_diagonal_modulus", d.min_diagonal_modulus},
                           {"inverse_norm_bound", number(d.inverse_norm_bound)},
                           {"invertible", d.invertible}};
    }
  }
  json config = map_config(a.map);
  config["n"] = a.n;
  config["epsilon"] = a.epsilon;
  config["mode"] = a.mode;
  config["seed"] = a.seed;
  OutputOptions o = a.o;
  if (!r.success && o.out.empty()) {
    o.out = (default_dir().value_or(fs::path(".")) / "extract.json").string();
  }
  const auto target = emit("extract", "json", cert.dump() + "\n", config, o, out);
  if (!r.success) {
    err << "extraction failed: " << r.failure << "\n";
    if (target) err << "best certificate written to " << target->string() << "\n";
    return kExitInfeasible;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  MapArgs map;
  Index n = 2;
  double epsilon = 0.2;
  std::string mode = "strict";
  Index min = 32;
  Index max = 128;
  Index trials = 10;
  double perturbation = -1.0;  // < 0 means epsilon / 4
  std::uint64_t seed = 0;
  OutputOptions o;
};

struct TrialOutcome {
  bool success = false;
  double residual = 0.0;
};

TrialOutcome run_trial(const SweepArgs& a, Index dim, std::uint64_t seed) {
  MapArgs m = a.map;
  m.N = dim;
  if (m.generator == "multiplier") {
    // Planted value drawn per trial.
    Rng rng(seed);
    const Complex lambda = random_in_disc(1.0, rng);
    m.lambda = lambda.real();
    m.lambda_im = lambda.imag();
    m.perturbation = a.perturbation < 0.0 ? a.epsilon / 4.0 : a.perturbation;
  }
  const auto phi = make_map(m, seed);
  ExtractionBudget budget;
  budget.seed = seed;
  const ExtractionResult r =
      find_scalar_compression(*phi, a.n, a.epsilon, parse_interleave_mode(a.mode), budget);
  return {r.success, r.residual};
}

int run_sweep(const SweepArgs& a, std::ostream& out) {
  if (a.trials < 1) throw InputError("--trials must be at least 1");
  const std::vector<Index> sizes = doubling_sizes(a.min, a.max);
  std::vector<std::vector<std::future<TrialOutcome>>> jobs(sizes.size());
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    for (Index t = 0; t < a.trials; ++t) {
      jobs[s].push_back(std::async(std::launch::async, run_trial, std::cref(a),
                                   sizes[s], a.seed + t));
    }
  }
  Table table{{"N", "n", "epsilon", "trials", "successes", "rate", "max_residual"}, {}};
  for (std::size_t s = 0; s < sizes.size(); ++s) {
    Index successes = 0;
    double worst = 0.0;
    for (auto& job : jobs[s]) {
      const TrialOutcome t = job.get();
      successes += t.success;
      if (t.success) worst = std::max(worst, t.residual);
    }
    table.rows.push_back({sizes[s], a.n, a.epsilon, a.trials, successes,
                          static_cast<double>(successes) / static_cast<double>(a.trials),
                          worst});
  }
  json config{{"generator", a.map.generator}, {"n", a.n},   {"epsilon", a.epsilon},
              {"mode", a.mode},               {"min", a.min}, {"max", a.max},
              {"trials", a.trials},           {"seed", a.seed},
              {"perturbation", a.perturbation < 0.0 ? a.epsilon / 4.0 : a.perturbation},
              {"format", a.o.format}};
  emit("extract-sweep", a.o.format, table.render(a.o.format), config, a.o, out);
  return 0;
}

// ---------------------------------------------------------------------------

struct FlattenArgs {
  std::string input;
  Index n = 2;
  double delta = 0.2;
  OutputOptions o;
};

int run_flatten(const FlattenArgs& a, std::ostream& out, std::ostream& err) {
  const ComplexMatrix x = load_cmx(a.input);
  const FlattenBlockReport r = flatten_block(x, a.n, a.delta);
  json rec;
  rec["success"] = r.success;
  rec["rho"] = r.rho.values();
  rec["good_set"] = r.good_set;
  rec["bad_pairs"] = r.bad_pairs;
  rec["feasibility_threshold"] = r.feasibility_threshold;
  rec["clique_bound"] = r.clique_bound;
  if (!r.success) rec["failure"] = r.failure;
  json config{{"input", a.input}, {"n", a.n}, {"delta", a.delta}};
  emit("flatten", "json", rec.dump() + "\n", config, a.o, out);
  if (!r.success) {
    err << "flattening failed: " << r.failure << "\n";
    return kExitInfeasible;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct GrowthArgs {
  Index min = 1;
  Index max = 256;
  double lambda = 1.0;
  double lambda_im = 0.0;
  double mu = 0.0;
  double mu_im = 0.0;
  OutputOptions o;
};

int run_tri_growth(const GrowthArgs& a, std::ostream& out) {
  Table t{{"N", "ratio", "ratio_over_lnN"}, {}};
  for (const GrowthRow& row : triangular_growth_table(doubling_sizes(a.min, a.max))) {
    t.rows.push_back({row.n, row.ratio, number(row.ratio_over_log)});
  }
  json config{{"min", a.min}, {"max", a.max}, {"format", a.o.format}};
  emit("tri-growth", a.o.format, t.render(a.o.format), config, a.o, out);
  return 0;
}

int run_schur_growth(const GrowthArgs& a, std::ostream& out) {
  const std::vector<Index> sizes = doubling_sizes(a.min, a.max);
  const Complex lambda(a.lambda, a.lambda_im);
  const Complex mu(a.mu, a.mu_im);
  std::vector<std::future<double>> jobs;
  for (Index n : sizes) {
    jobs.push_back(std::async(std::launch::async, [=] {
      return schur_pattern_growth(lambda, mu, n);
    }));
  }
  Table t{{"N", "growth"}, {}};
  for (std::size_t s = 0; s < sizes.size(); ++s) t.rows.push_back({sizes[s], jobs[s].get()});
  json config{{"lambda", {a.lambda, a.lambda_im}},
              {"mu", {a.mu, a.mu_im}},
              {"min", a.min},
              {"max", a.max},
              {"format", a.o.format}};
  emit("schur-growth", a.o.format, t.render(a.o.format), config, a.o, out);
  return 0;
}

// ---------------------------------------------------------------------------

struct OrdArgs {
  std::string expression;
  std::string cmp;
  std::string prop7;
  bool pow_omega = false;
  OutputOptions o;
};

std::string ordering_name(std::strong_ordering c) {
  if (c < 0) return "less";
  if (c > 0) return "greater";
  return "equal";
}

int run_ord(const OrdArgs& a, std::ostream& out) {
  const Ordinal value = parse_ordinal_expression(a.expression);
  json rec;
  rec["expression"] = a.expression;
  rec["value"] = to_string(value);
  rec["height"] = value.height();
  if (!a.cmp.empty()) {
    const Ordinal other = parse_ordinal_expression(a.cmp);
    rec["compare_to"] = to_string(other);
    rec["cmp"] = ordering_name(ord_cmp(value, other));
  }
  if (!a.prop7.empty()) {
    const Ordinal other = parse_ordinal_expression(a.prop7);
    rec["prop7_with"] = to_string(other);
    rec["prop7_applies"] = prop7_applies(value, other);
  }
  if (a.pow_omega) rec["pow_omega"] = to_string(ord_pow_omega(value));
  json config{{"expression", a.expression}, {"cmp", a.cmp}, {"prop7", a.prop7},
              {"pow_omega", a.pow_omega}, {"format", a.o.format}};
  std::string body;
  if (a.o.format == "csv") {
    body = "key,value\n";
    for (const auto& [key, v] : rec.items()) {
      body += key + "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
  } else {
    body = rec.dump() + "\n";
  }
  emit("ord", a.o.format, body, config, a.o, out);
  return 0;
}

// ---------------------------------------------------------------------------

struct MaskArgs {
  std::string ordinal;
  Index depth = 2;
  bool decompose = false;
  OutputOptions o;
};

json mask_rows(const NestMask& m) {
  json rows = json::array();
  std::istringstream text(m.to_text());
  for (std::string line; std::getline(text, line);) rows.push_back(line);
  return rows;
}

json ordinal_list(const std::vector<Ordinal>& points) {
  json list = json::array();
  for (const auto& p : points) list.push_back(to_string(p));
  return list;
}

int run_mask(const MaskArgs& a, std::ostream& out) {
  const Ordinal alpha = parse_ordinal(a.ordinal);
  const std::vector<Ordinal> points = ordinal_sample(alpha, a.depth);
  const NestMask mask = nest_mask_for_ordinal(alpha, a.depth);
  json rec;
  rec["ordinal"] = to_string(alpha);
  rec["depth"] = a.depth;
  rec["dim"] = mask.dim();
  rec["nest"] = mask.is_nest_mask();
  rec["points"] = ordinal_list(points);
  rec["mask"] = mask_rows(mask);
  bool verified = true;
  if (a.decompose) {
    const Lemma15Report r = mask_decompose_lemma15(alpha, a.depth);
    json blocks = json::array();
    for (const auto& b : r.blocks) blocks.push_back(b);
    rec["decomposition"] = {{"product", to_string(r.product)},
                            {"intervals", r.depth},
                            {"block_size", r.block_size},
                            {"blocks", blocks},
                            {"intervals_ok", r.intervals_ok},
                            {"bijective", r.bijective},
                            {"diagonal_blocks_equal", r.diagonal_blocks_equal},
                            {"support_preserving", r.support_preserving},
                            {"residual_full_upper", r.residual_full_upper},
                            {"residual_zero_below", r.residual_zero_below},
                            {"verified", r.verified}};
    verified = r.verified;
  }
  json config{{"ordinal", a.ordinal}, {"depth", a.depth}, {"decompose", a.decompose}};
  emit("mask", "json", rec.dump() + "\n", config, a.o, out);
  return verified ? 0 : kExitInfeasible;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trace-class nest algebra experiments", "nestalg"};
  app.set_version_flag("--version", std::string(NESTALG_VERSION_STRING));
  app.require_subcommand(1);

  NormsArgs norms;
  auto* norms_cmd = app.add_subcommand("norms", "Schatten norms of a cmx matrix");
  norms_cmd->add_option("--input", norms.input, "cmx file")->required();
  norms_cmd->add_option("--p", norms.ps, "Exponents (numbers >= 1 or inf)")
      ->delimiter(',');
  add_output_options(norms_cmd, norms.o, true);

  ExtractArgs extract;
  auto* extract_cmd = app.add_subcommand("extract", "Find a scalar compression");
  add_map_options(extract_cmd, extract.map);
  add_extract_options(extract_cmd, extract);
  add_output_options(extract_cmd, extract.o, false);

  SweepArgs sweep;
  sweep.map.generator = "multiplier";
  auto* sweep_cmd =
      app.add_subcommand("extract-sweep", "Extraction success rate against N");
  sweep_cmd->add_option("--generator", sweep.map.generator, "Built-in map")
      ->check(CLI::IsMember({"identity", "transpose", "multiplier",
                             "random-contraction"}));
  sweep_cmd->add_option("--n", sweep.n)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--epsilon", sweep.epsilon);
  sweep_cmd->add_option("--mode", sweep.mode)->check(CLI::IsMember({"strict", "weak"}));
  sweep_cmd->add_option("--min", sweep.min, "Smallest N");
  sweep_cmd->add_option("--max", sweep.max, "Largest N (N doubles)");
  sweep_cmd->add_option("--trials", sweep.trials, "Trials per N");
  sweep_cmd->add_option("--perturbation", sweep.perturbation,
                        "Planted multiplier perturbation (default epsilon/4)");
  sweep_cmd->add_option("--seed", sweep.seed, "Trial t uses seed + t");
  add_output_options(sweep_cmd, sweep.o, true);

  FlattenArgs flatten;
  auto* flatten_cmd = app.add_subcommand("flatten", "Flatten an upper triangular block");
  flatten_cmd->add_option("--input", flatten.input, "cmx file")->required();
  flatten_cmd->add_option("--n", flatten.n)->check(CLI::PositiveNumber);
  flatten_cmd->add_option("--delta", flatten.delta);
  add_output_options(flatten_cmd, flatten.o, false);

  GrowthArgs tri;
  auto* tri_cmd = app.add_subcommand("tri-growth", "Triangular truncation growth table");
  tri_cmd->add_option("--min", tri.min);
  tri_cmd->add_option("--max", tri.max);
  add_output_options(tri_cmd, tri.o, true);

  GrowthArgs schur;
  schur.max = 256;
  auto* schur_cmd = app.add_subcommand("schur-growth", "Two-valued pattern growth table");
  schur_cmd->add_option("--lambda", schur.lambda, "Value below the diagonal");
  schur_cmd->add_option("--lambda-im", schur.lambda_im);
  schur_cmd->add_option("--mu", schur.mu, "Value on and above the diagonal");
  schur_cmd->add_option("--mu-im", schur.mu_im);
  schur_cmd->add_option("--min", schur.min);
  schur_cmd->add_option("--max", schur.max);
  add_output_options(schur_cmd, schur.o, true);

  OrdArgs ord;
  ord.o.format = "json";
  auto* ord_cmd = app.add_subcommand("ord", "Evaluate an ordinal expression");
  ord_cmd->add_option("expression", ord.expression, "e.g. w^2*3+w*5+7")->required();
  ord_cmd->add_option("--cmp", ord.cmp, "Compare against another expression");
  ord_cmd->add_option("--prop7", ord.prop7, "Test the isomorphism condition with");
  ord_cmd->add_flag("--pow-omega", ord.pow_omega, "Also print value^w");
  add_output_options(ord_cmd, ord.o, true);

  MaskArgs mask;
  auto* mask_cmd = app.add_subcommand("mask", "Nest mask of an ordinal");
  mask_cmd->add_option("--ordinal", mask.ordinal, "Ordinal in normal form")->required();
  mask_cmd->add_option("--depth", mask.depth, "Points per limit stage");
  mask_cmd->add_flag("--decompose", mask.decompose, "Add the interval decomposition report");
  add_output_options(mask_cmd, mask.o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*norms_cmd) return run_norms(norms, out);
    if (*extract_cmd) return run_extract(extract, out, err);
    if (*sweep_cmd) return run_sweep(sweep, out);
    if (*flatten_cmd) return run_flatten(flatten, out, err);
    if (*tri_cmd) return run_tri_growth(tri, out);
    if (*schur_cmd) return run_schur_growth(schur, out);
    if (*ord_cmd) return run_ord(ord, out);
    if (*mask_cmd) return run_mask(mask, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace nestalg::cli
