#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gadkit/apolarity.hpp"
#include "gadkit/benchlab.hpp"
#include "gadkit/decomposer.hpp"
#include "gadkit/errors.hpp"
#include "gadkit/invsystems.hpp"
#include "gadkit/poly_io.hpp"
#include "gadkit/serialize.hpp"

namespace gadkit::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_target(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

// '#' starts a comment running to the end of the line; newlines are kept so
// parse positions still match the file.
std::string strip_comments(std::string text) {
  bool comment = false;
  for (char& c : text) {
    if (c == '\n') comment = false;
    else if (c == '#') comment = true;
    if (comment) c = ' ';
  }
  return text;
}

struct PolyInput {
  std::string path;
  std::string inline_text;
  std::optional<std::size_t> nvars;

  void attach(CLI::App* app) {
    app->add_option("input", path, "File with the polynomial in text form ('-' for stdin)");
    app->add_option("-p,--poly", inline_text, "Polynomial given inline, e.g. \"x0^3 + 2*x0*x1^2\"");
    app->add_option("--nvars", nvars, "Number of variables x0..x(N-1); inferred when omitted")
        ->check(CLI::PositiveNumber);
  }

  Poly load() const {
    if (path.empty() == inline_text.empty())
      throw UsageError("give exactly one of an input file or --poly");
    const std::string text = inline_text.empty() ? strip_comments(read_source(path)) : inline_text;
    return parse_poly(text, nvars);
  }
};

struct SeedOptions {
  std::optional<std::uint64_t> seed;
  bool entropy = false;

  void attach(CLI::App* app) {
    auto* s = app->add_option("--seed", seed,
                              "Random seed (overrides GADKIT_SEED; default " + std::to_string(kDefaultSeed) + ")");
    app->add_flag("--entropy", entropy, "Seed from OS entropy instead of the fixed default")->excludes(s);
  }

  std::uint64_t resolve() const {
    if (seed) return *seed;
    if (entropy) {
      std::random_device rd;
      return (std::uint64_t{rd()} << 32) ^ rd();
    }
    if (const char* env = std::getenv("GADKIT_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used, 0);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        return v;
      } catch (const std::exception&) {
        throw UsageError(std::string("GADKIT_SEED is not an unsigned integer: ") + env);
      }
    }
    return kDefaultSeed;
  }
};

struct TolOptions {
  DecomposeOptions opts;

  void attach(CLI::App* app, bool full) {
    app->add_option("--svd-tol", opts.svd_tol, "Relative singular value cutoff for the numerical rank")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    if (!full) return;
    app->add_option("--cluster-tol", opts.cluster_tol, "Base eigenvalue clustering threshold")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--nil-tol", opts.nil_tol, "Tolerance of the nilpotency test")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--comm-tol", opts.comm_tol, "Commutator size above which a warning is reported")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--retry-cap", opts.retry_cap, "Retries for localization and clustering failures")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--coord-trials", opts.coord_trials, "Random coordinate changes tried per round")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    app->add_option("--rank", opts.forced_rank, "Use this rank instead of detecting it")->check(CLI::PositiveNumber);
    app->add_option("--clusters", opts.forced_clusters, "Use this number of points instead of detecting it")
        ->check(CLI::PositiveNumber);
    app->add_option("--split", opts.split, "Hankel split c (rows of degree <= d-c, columns <= c-1)")
        ->check(CLI::PositiveNumber);
    app->add_option("--polish-steps", opts.polish_steps, "Gauss-Newton steps on the recovered GAD (0 disables)")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--normalize", opts.normalize_supports, "Scale each support to unit norm");
  }
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a comma separated list of integers: " + text);
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gadkit: generalized additive decompositions of homogeneous forms"};
  app.name("gadkit");
  app.require_subcommand(1);
  app.set_version_flag("--version", "gadkit 0.1.0");
  app.footer(
      "Exit codes: 0 ok, 1 nil-index above the degree bound, 2 localization failure,\n"
      "3 clustering failure, 64 usage error, 65 malformed input, 70 numerical failure, 74 I/O error.\n"
      "GADKIT_SEED sets the default seed.");

  // decompose
  auto* dec = app.add_subcommand("decompose", "Compute a GAD of a form and print the JSON report");
  PolyInput dec_in;
  dec_in.attach(dec);
  TolOptions dec_tol;
  dec_tol.attach(dec, true);
  SeedOptions dec_seed;
  dec_seed.attach(dec);
  std::string dec_out;
  dec->add_option("-o,--output", dec_out, "Write the JSON report here instead of stdout");

  // rank
  auto* rk = app.add_subcommand("rank", "GAD rank of a GAD in JSON form, or the l-rank of one term");
  std::string rk_path;
  std::string rk_omega;
  std::string rk_ell;
  rk->add_option("input", rk_path, "GAD JSON file ('-' for stdin)");
  rk->add_option("--omega", rk_omega, "Form omega for a single l-rank, in text form");
  rk->add_option("--ell", rk_ell, "Coefficients of l for a single l-rank, comma separated");

  // reconstruct
  auto* rc = app.add_subcommand("reconstruct", "Expand sum_i omega_i l_i^(d-k_i) of a GAD JSON");
  std::string rc_path;
  std::string rc_out;
  rc->add_option("input", rc_path, "GAD JSON file ('-' for stdin)")->required();
  rc->add_option("-o,--output", rc_out, "Write the polynomial here instead of stdout");

  // kernel
  auto* kn = app.add_subcommand("kernel", "Kernel of a Hankel matrix of a form, as homogeneous polynomials");
  PolyInput kn_in;
  kn_in.attach(kn);
  std::optional<int> kn_rows;
  std::optional<int> kn_cols;
  std::optional<int> kn_split;
  double kn_tol = 1e-8;
  std::string kn_matrix;
  kn->add_option("--rows", kn_rows, "Row monomials of degree <= R (with --cols)")->check(CLI::NonNegativeNumber);
  kn->add_option("--cols", kn_cols, "Column monomials of degree <= C (with --rows)")->check(CLI::NonNegativeNumber);
  kn->add_option("--split", kn_split, "Use the H_0 of the family with split c")->check(CLI::PositiveNumber);
  kn->add_option("--svd-tol", kn_tol, "Relative singular value cutoff")->capture_default_str();
  kn->add_option("--matrix", kn_matrix, "Also write the Hankel matrix as CSV to this file");

  // bench
  auto* bn = app.add_subcommand("bench", "Perturbation sweep of random GADs; CSV of relative errors");
  BenchConfig cfg;
  std::string bn_config;
  std::string bn_ks;
  double eps_min = -14.0, eps_max = 0.0, eps_step = 0.5;
  std::string bn_csv;
  std::string bn_svg;
  SeedOptions bn_seed;
  bn->add_option("--config", bn_config, "JSON config; flags given explicitly override it");
  bn->add_option("--n", cfg.n, "Number of affine variables")->capture_default_str()->check(CLI::PositiveNumber);
  bn->add_option("--d", cfg.d, "Degree of the forms")->capture_default_str()->check(CLI::PositiveNumber);
  bn->add_option("--ks", bn_ks, "Degrees k_i of the omega_i, comma separated (default 0,0,0,0,0)");
  bn->add_option("--trials", cfg.trials, "Perturbations per level")->capture_default_str()->check(CLI::PositiveNumber);
  bn->add_option("--eps-min-exp", eps_min, "Smallest exponent e of eps = 10^e")->capture_default_str();
  bn->add_option("--eps-max-exp", eps_max, "Largest exponent")->capture_default_str();
  bn->add_option("--eps-step", eps_step, "Exponent step")->capture_default_str()->check(CLI::PositiveNumber);
  bn->add_option("--bases", cfg.bases, "Number of base forms pooled per level")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bn->add_flag("--auto", cfg.auto_mode, "Detect rank and cluster count instead of feeding them");
  bn->add_option("--threads", cfg.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  bn->add_option("--csv", bn_csv, "Write the CSV here instead of stdout");
  bn->add_option("--svg", bn_svg, "Also write a log-log plot");
  bn_seed.attach(bn);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (dec->parsed()) {
      const Poly f = dec_in.load();
      DecomposeOptions opts = dec_tol.opts;
      opts.seed = dec_seed.resolve();
      try {
        const DecompositionReport rep = gad_decompose(f, opts);
        write_target(dec_out, report_to_json(rep), out);
        for (const auto& w : rep.diagnostics.warnings) err << "warning: " << w << "\n";
        return 0;
      } catch (const DecompositionError& e) {
        write_target(dec_out, failure_to_json(e), out);
        err << "gadkit: " << e.what() << "\n";
        return e.exit_code();
      }
    }

    if (rk->parsed()) {
      const bool single = !rk_omega.empty() || !rk_ell.empty();
      if (single == !rk_path.empty()) throw UsageError("give either a GAD JSON file or --omega with --ell");
      if (single) {
        if (rk_omega.empty() || rk_ell.empty()) throw UsageError("--omega and --ell go together");
        std::vector<cplx> coeffs;
        std::stringstream ss(rk_ell);
        std::string item;
        while (std::getline(ss, item, ',')) {
          try {
            coeffs.push_back(std::stod(item));
          } catch (const std::exception&) {
            throw UsageError("--ell: not a number: " + item);
          }
        }
        const Poly omega = parse_poly(rk_omega, coeffs.size());
        out << ell_rank(omega, LinearForm(std::move(coeffs))) << "\n";
        return 0;
      }
      const GAD g = gad_from_json(read_source(rk_path));
      std::vector<std::string> lines;
      int total = 0;
      for (std::size_t i = 0; i < g.terms.size(); ++i) {
        const int r = ell_rank(g.terms[i].omega, g.terms[i].ell);
        total += r;
        lines.push_back("term " + std::to_string(i) + ": " + std::to_string(r));
      }
      if (g.terms.size() > 1) out << join_lines(lines);
      out << total << "\n";
      for (const auto& w : gad_warnings(g)) err << "warning: " << w << "\n";
      return 0;
    }

    if (rc->parsed()) {
      const GAD g = gad_from_json(read_source(rc_path));
      write_target(rc_out, to_string(reconstruct(g)) + "\n", out);
      return 0;
    }

    if (kn->parsed()) {
      const Poly f = kn_in.load();
      const auto d = f.homogeneous_degree();
      if (!d) throw ContractError("kernel: the input must be a nonzero form");
      if (kn_rows.has_value() != kn_cols.has_value()) throw UsageError("--rows and --cols go together");
      if (kn_rows && kn_split) throw UsageError("--split cannot be combined with --rows/--cols");
      const DualSeries fs = check_f(f);
      CMatrix h;
      std::vector<MultiIndex> cols;
      int col_degree = 0;
      if (kn_rows) {
        if (*kn_rows + *kn_cols > *d) throw UsageError("--rows + --cols exceeds the degree of the form");
        h = hankel_matrix(fs, *kn_rows, *kn_cols);
        cols = monomials(fs.nvars(), *kn_cols, false);
        col_degree = *kn_cols;
      } else {
        const HankelFamily fam = hankel_family(fs, *d, kn_split);
        h = fam.h0();
        cols = fam.cols;
        col_degree = fam.split - 1;
      }
      if (!kn_matrix.empty()) write_target(kn_matrix, matrix_to_csv(h), out);
      std::string text;
      for (const Poly& g : hankel_kernel(h, cols, kn_tol)) {
        Poly hom(f.nvars());
        for (const auto& [alpha, c] : g.terms()) hom.add_term(alpha.homogenize(col_degree), c);
        text += to_string(cleanup(hom, 1e-12 * max_abs_coeff(hom))) + "\n";
      }
      out << text;
      return 0;
    }

    if (bn->parsed()) {
      if (!bn_config.empty()) {
        const BenchConfig base = bench_config_from_json(read_source(bn_config));
        // explicit flags win over the file
        auto given = [&](const char* name) { return bn->count(name) > 0; };
        if (!given("--n")) cfg.n = base.n;
        if (!given("--d")) cfg.d = base.d;
        if (!given("--trials")) cfg.trials = base.trials;
        if (!given("--bases")) cfg.bases = base.bases;
        if (!given("--threads")) cfg.threads = base.threads;
        if (!given("--auto")) cfg.auto_mode = base.auto_mode;
        if (bn_ks.empty()) cfg.ks = base.ks;
        cfg.eps = base.eps;
        cfg.decomposer = base.decomposer;
        if (!given("--seed") && !given("--entropy")) cfg.seed = base.seed;
      }
      if (!bn_ks.empty()) cfg.ks = parse_int_list(bn_ks);
      if (bn_config.empty() || bn->count("--eps-min-exp") || bn->count("--eps-max-exp") || bn->count("--eps-step"))
        cfg.eps = eps_grid(eps_min, eps_max, eps_step);
      if (bn_config.empty() || bn->count("--seed") || bn->count("--entropy")) cfg.seed = bn_seed.resolve();
      const auto rows = sweep(cfg);
      write_target(bn_csv, rows_to_csv(rows), out);
      if (!bn_svg.empty()) {
        std::string ks;
        for (int k : cfg.ks) ks += (ks.empty() ? "" : ",") + std::to_string(k);
        write_target(bn_svg,
                     rows_to_svg(rows, "(n, d, ks) = (" + std::to_string(cfg.n) + ", " + std::to_string(cfg.d) +
                                           ", [" + ks + "])"),
                     out);
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "gadkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "gadkit: " << e.what() << "\n";
    return kExitIo;
  } catch (const ParseError& e) {
    err << "gadkit: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {  // ContractError, DimensionError
    err << "gadkit: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericalError& e) {
    err << "gadkit: " << e.what() << "\n";
    return kExitSoftware;
  } catch (const std::runtime_error& e) {  // emit() I/O failures
    err << "gadkit: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace gadkit::cli
