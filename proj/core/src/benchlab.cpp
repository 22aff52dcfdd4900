#include "gadkit/benchlab.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gadkit/apolarity.hpp"

namespace gadkit {

namespace {

double projective_distance(const LinearForm& a, const LinearForm& b) {
  cplx dot{};
  for (std::size_t t = 0; t < a.nvars(); ++t) dot += std::conj(a[t]) * b[t];
  const double cosine = std::min(1.0, std::abs(dot) / (a.norm() * b.norm()));
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * cosine));
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.16e", v);
  return buf.data();
}

}  // namespace

std::vector<double> eps_grid(double min_exp, double max_exp, double step) {
  if (!(step > 0.0)) throw ContractError("eps_grid: step must be positive");
  if (max_exp < min_exp) throw ContractError("eps_grid: max_exp < min_exp");
  std::vector<double> out;
  const auto count = static_cast<int>(std::floor((max_exp - min_exp) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) out.push_back(std::pow(10.0, min_exp + i * step));
  return out;
}

void validate(const BenchConfig& cfg) {
  if (cfg.n < 1) throw ContractError("bench: n must be >= 1");
  if (cfg.d < 1) throw ContractError("bench: d must be >= 1");
  if (cfg.ks.empty()) throw ContractError("bench: ks is empty");
  for (int k : cfg.ks)
    if (k < 0 || k > cfg.d) throw ContractError("bench: every k must lie in [0, d]");
  if (cfg.eps.empty()) throw ContractError("bench: empty eps grid");
  for (std::size_t i = 0; i < cfg.eps.size(); ++i) {
    if (!(cfg.eps[i] >= 0.0) || !std::isfinite(cfg.eps[i]))
      throw ContractError("bench: eps values must be finite and nonnegative");
    if (i > 0 && !(cfg.eps[i] > cfg.eps[i - 1]))
      throw ContractError("bench: eps grid must be strictly increasing");
  }
  if (cfg.trials < 1) throw ContractError("bench: trials must be >= 1");
  if (cfg.bases < 1) throw ContractError("bench: bases must be >= 1");
  if (cfg.threads < 1) throw ContractError("bench: threads must be >= 1");
}

GAD random_gad(int n, int d, const std::vector<int>& ks, Rng& rng) {
  if (n < 1) throw ContractError("random_gad: n must be >= 1");
  for (int k : ks)
    if (k < 0 || k > d) throw ContractError("random_gad: every k must lie in [0, d]");
  const auto n1 = static_cast<std::size_t>(n + 1);
  std::normal_distribution<double> normal;

  std::vector<LinearForm> supports;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    supports.clear();
    for (std::size_t i = 0; i < ks.size(); ++i) {
      std::vector<cplx> l(n1);
      l[0] = 1.0;
      for (std::size_t j = 1; j < n1; ++j) l[j] = normal(rng);
      supports.emplace_back(std::move(l));
    }
    bool separated = true;
    for (std::size_t i = 0; i < supports.size() && separated; ++i)
      for (std::size_t j = i + 1; j < supports.size() && separated; ++j)
        separated = projective_distance(supports[i], supports[j]) >= 0.1;
    if (separated) break;
  }

  GAD g;
  g.n = n;
  g.d = d;
  for (std::size_t i = 0; i < ks.size(); ++i)
    g.terms.push_back({random_homogeneous(n1, ks[i], rng), supports[i], ks[i]});
  return g;
}

Poly perturb(const Poly& f0, double eps, Rng& rng) {
  if (!(eps >= 0.0)) throw ContractError("perturb: eps must be nonnegative");
  const auto d = f0.homogeneous_degree();
  if (!d) throw ContractError("perturb: f0 must be a nonzero form");
  Poly r = random_homogeneous(f0.nvars(), *d, rng);
  if (eps == 0.0) return f0;
  r *= eps / apolar_norm(r);
  return f0 + r;
}

Rng trial_rng(std::uint64_t master, std::uint64_t base, std::uint64_t level, std::uint64_t trial) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffULL); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(master), hi(master), lo(base), hi(base), lo(level), hi(level), lo(trial), hi(trial)};
  return Rng(seq);
}

std::vector<BenchRow> sweep(const BenchConfig& cfg) {
  validate(cfg);
  const std::size_t levels = cfg.eps.size();
  const auto trials = static_cast<std::size_t>(cfg.trials);
  const auto bases = static_cast<std::size_t>(cfg.bases);

  struct Base {
    Poly f0;
    double norm = 0.0;
    int rank = 0;
  };
  std::vector<Base> base_forms;
  for (std::size_t b = 0; b < bases; ++b) {
    Rng rng = trial_rng(cfg.seed, b, ~std::uint64_t{0}, 0);
    const GAD g = random_gad(cfg.n, cfg.d, cfg.ks, rng);
    Base base;
    base.f0 = reconstruct(g);
    base.norm = apolar_norm(base.f0);
    base.rank = gad_rank(g);
    base_forms.push_back(std::move(base));
  }

  const std::size_t total = bases * levels * trials;
  std::vector<double> delta(total, std::numeric_limits<double>::quiet_NaN());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t task = next++; task < total; task = next++) {
      const std::size_t b = task / (levels * trials);
      const std::size_t level = (task / trials) % levels;
      const std::size_t t = task % trials;
      Rng rng = trial_rng(cfg.seed, b, level, t);
      const Base& base = base_forms[b];
      const Poly f = perturb(base.f0, cfg.eps[level], rng);
      DecomposeOptions opts = cfg.decomposer;
      opts.seed = rng();
      if (!cfg.auto_mode) {
        opts.forced_rank = base.rank;
        opts.forced_clusters = static_cast<int>(cfg.ks.size());
      }
      try {
        const DecompositionReport rep = gad_decompose(f, opts);
        delta[task] = rep.relative_apolar_error;
      } catch (const std::exception&) {
        // counted as a failure below
      }
    }
  };

  const auto nthreads = static_cast<std::size_t>(cfg.threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<BenchRow> rows;
  for (std::size_t level = 0; level < levels; ++level) {
    BenchRow row;
    row.eps = cfg.eps[level];
    std::vector<double> ok;
    for (std::size_t b = 0; b < bases; ++b) {
      for (std::size_t t = 0; t < trials; ++t) {
        const double v = delta[(b * levels + level) * trials + t];
        if (std::isfinite(v))
          ok.push_back(v);
        else
          ++row.failures;
      }
    }
    if (ok.empty()) {
      row.median = row.min = row.max = std::numeric_limits<double>::quiet_NaN();
    } else {
      row.median = median_of(ok);
      row.min = *std::min_element(ok.begin(), ok.end());
      row.max = *std::max_element(ok.begin(), ok.end());
    }
    rows.push_back(row);
  }
  return rows;
}

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
  std::string out = "eps,median,min,max,failures\n";
  for (const auto& r : rows)
    out += sci(r.eps) + "," + sci(r.median) + "," + sci(r.min) + "," + sci(r.max) + "," +
           std::to_string(r.failures) + "\n";
  return out;
}

std::string rows_to_svg(const std::vector<BenchRow>& rows, const std::string& title) {
  constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
  double ylo = xlo, yhi = -xlo;
  for (const auto& r : rows) {
    if (r.eps > 0) {
      xlo = std::min(xlo, std::log10(r.eps));
      xhi = std::max(xhi, std::log10(r.eps));
    }
    for (double v : {r.median, r.min, r.max}) {
      if (std::isfinite(v) && v > 0) {
        ylo = std::min(ylo, std::log10(v));
        yhi = std::max(yhi, std::log10(v));
      }
    }
  }
  if (!std::isfinite(xlo)) xlo = -1, xhi = 0;
  if (!std::isfinite(ylo)) ylo = -1, yhi = 0;
  xlo = std::floor(xlo), xhi = std::ceil(xhi);
  ylo = std::floor(ylo), yhi = std::ceil(yhi);
  if (xhi == xlo) xhi += 1;
  if (yhi == ylo) yhi += 1;

  auto px = [&](double e) { return kLeft + (e - xlo) / (xhi - xlo) * (kW - kLeft - kRight); };
  auto py = [&](double e) { return kTop + (yhi - e) / (yhi - ylo) * (kH - kTop - kBottom); };
  auto num = [](double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.2f", v);
    return std::string(buf.data());
  };
  auto escape = [](const std::string& s) {
    std::string o;
    for (char c : s) {
      if (c == '<') o += "&lt;";
      else if (c == '>') o += "&gt;";
      else if (c == '&') o += "&amp;";
      else o += c;
    }
    return o;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
      << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
      << "</text>\n";
  svg << "<g stroke=\"#ddd\" font-size=\"10\" fill=\"#444\">\n";
  for (double e = xlo; e <= xhi; e += 1) {
    svg << "<line x1=\"" << num(px(e)) << "\" y1=\"" << kTop << "\" x2=\"" << num(px(e)) << "\" y2=\""
        << kH - kBottom << "\"/>\n";
    svg << "<text stroke=\"none\" x=\"" << num(px(e)) << "\" y=\"" << kH - kBottom + 14
        << "\" text-anchor=\"middle\">1e" << static_cast<int>(e) << "</text>\n";
  }
  for (double e = ylo; e <= yhi; e += 1) {
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << num(py(e)) << "\" x2=\"" << kW - kRight << "\" y2=\""
        << num(py(e)) << "\"/>\n";
    svg << "<text stroke=\"none\" x=\"" << kLeft - 6 << "\" y=\"" << num(py(e) + 3)
        << "\" text-anchor=\"end\">1e" << static_cast<int>(e) << "</text>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\" font-size=\"12\">eps</text>\n";

  struct Curve {
    const char* name;
    const char* color;
    double BenchRow::*field;
  };
  const Curve curves[] = {{"median", "#1f77b4", &BenchRow::median},
                          {"min", "#2ca02c", &BenchRow::min},
                          {"max", "#d62728", &BenchRow::max}};
  int legend = 0;
  for (const auto& c : curves) {
    std::string points;
    for (const auto& r : rows) {
      const double v = r.*(c.field);
      if (r.eps > 0 && std::isfinite(v) && v > 0)
        points += num(px(std::log10(r.eps))) + "," + num(py(std::log10(v))) + " ";
    }
    if (!points.empty()) points.pop_back();
    svg << "<polyline fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.5\" points=\"" << points
        << "\"/>\n";
    const double ly = kTop + 12 + 14 * legend++;
    svg << "<text x=\"" << kLeft + 10 << "\" y=\"" << ly << "\" font-size=\"11\" fill=\"" << c.color << "\">"
        << c.name << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit(const std::vector<BenchRow>& rows, const std::string& csv_path,
          const std::optional<std::string>& svg_path, const std::string& title) {
  if (rows.empty()) throw ContractError("emit: no rows");
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
  };
  write(csv_path, rows_to_csv(rows));
  if (svg_path) write(*svg_path, rows_to_svg(rows, title));
}

double loglog_slope(const std::vector<BenchRow>& rows, double lo, double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& r : rows) {
    if (r.eps < lo || r.eps > hi || !(r.median > 0) || !std::isfinite(r.median)) continue;
    const double x = std::log10(r.eps), y = std::log10(r.median);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace gadkit
