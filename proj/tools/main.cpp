#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "aztec/combinatorics.hpp"
#include "aztec/errors.hpp"
#include "aztec/fluct.hpp"
#include "aztec/frozen.hpp"
#include "aztec/limitshape.hpp"
#include "aztec/sampler.hpp"
#include "svg.hpp"

using json = nlohmann::json;
using namespace aztec;
namespace fs = std::filesystem;

namespace {

constexpr int kSchema = 1;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no inf/nan
json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct RunConfig {
  std::optional<DomainSpec> domain;
  std::optional<SegmentMeasure> measure;
  std::optional<int> N;  // discretization for sampling from a measure
  mpq_class q = 1;
  std::uint64_t seed = 0;
  long samples = 1;
  int grid_w = 100, grid_h = 100;
  std::string out;
  Arithmetic mode = Arithmetic::exact;
  json raw = json::object();

  DomainSpec finite() const {
    if (domain) return *domain;
    if (!N) throw ValidationError("an asymptotic domain needs N for sampling");
    return discretize(*measure, *N);
  }
  SegmentMeasure limit() const { return measure ? *measure : empirical_measure(*domain); }
  double qd() const { return q.get_d(); }
};

mpq_class parse_q(const std::string& s) {
  mpq_class q;
  try {
    if (s.find_first_of(".eE") != std::string::npos) {
      q = mpq_class(std::stod(s));
    } else {
      q = mpq_class(s);
    }
  } catch (const std::exception&) {
    throw ValidationError("q: cannot parse '" + s + "'");
  }
  q.canonicalize();
  if (!(q > 0)) throw ValidationError("q must be positive");
  return q;
}

std::pair<int, int> parse_grid(const std::string& s) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream in(s);
  if (!(in >> w >> x >> h) || x != 'x' || w < 1 || h < 1) throw ValidationError("grid must look like WxH");
  return {w, h};
}

void load_domain(RunConfig& c, const json& j) {
  const bool has_domain = j.contains("domain"), has_measure = j.contains("measure");
  if (has_domain && has_measure) throw ValidationError("config: give either domain or measure, not both");
  if (has_domain) {
    const json& d = j["domain"];
    if (d.contains("aztec"))
      c.domain = DomainSpec::aztec(d["aztec"].get<int>());
    else if (d.contains("omega"))
      c.domain = DomainSpec::make(d["omega"].get<std::vector<long>>());
    else
      throw ValidationError("config: domain needs omega or aztec");
  }
  if (has_measure) {
    const json& m = j["measure"];
    if (m.contains("theta")) {
      c.measure = SegmentMeasure::single_theta(m["theta"].get<int>());
    } else if (m.contains("segments")) {
      std::vector<std::pair<double, double>> ab;
      for (const auto& s : m["segments"]) ab.push_back({s.at(0).get<double>(), s.at(1).get<double>()});
      c.measure = SegmentMeasure::segments(ab);
    } else {
      throw ValidationError("config: measure needs segments or theta");
    }
  }
  if (j.contains("N")) c.N = j["N"].get<int>();
}

RunConfig load_config(const std::string& path) {
  RunConfig c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  if (j.contains("schema_version") && j["schema_version"] != kSchema)
    throw ValidationError("config: unsupported schema_version");
  try {
    load_domain(c, j);
    if (j.contains("q")) c.q = parse_q(j["q"].is_string() ? j["q"].get<std::string>() : g17(j["q"].get<double>()));
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) c.samples = j["samples"].get<long>();
    if (j.contains("grid")) {
      if (j["grid"].is_string()) {
        std::tie(c.grid_w, c.grid_h) = parse_grid(j["grid"].get<std::string>());
      } else {
        c.grid_w = j["grid"].at(0).get<int>();
        c.grid_h = j["grid"].at(1).get<int>();
      }
    }
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("mode")) {
      const std::string m = j["mode"].get<std::string>();
      if (m == "exact")
        c.mode = Arithmetic::exact;
      else if (m == "float")
        c.mode = Arithmetic::floating;
      else
        throw ValidationError("config: mode is exact or float");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  c.raw = j;
  return c;
}

template <class T>
T opt(const RunConfig& c, const char* key, T fallback) {
  if (!c.raw.contains(key)) return fallback;
  try {
    return c.raw[key].get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config field ") + key + ": " + e.what());
  }
}

void require_any_domain(const RunConfig& c) {
  if (!c.domain && !c.measure) throw ValidationError("no domain given (config domain/measure or --aztec)");
}

// Writes to out/name when an output directory is set, otherwise to stdout.
void emit(const RunConfig& c, const std::string& name, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(c.out);
  std::ofstream f(fs::path(c.out) / name, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + (fs::path(c.out) / name).string());
  f << text;
}

json domain_json(const DomainSpec& d) { return {{"N", d.N}, {"omega", d.omega}, {"m", d.m}}; }

json sequence_json(const SignatureSequence& s) {
  json chain = json::array();
  for (const auto& sg : s.chain) chain.push_back(sg);
  return chain;
}

std::string jsonl_line(json j) {
  j["schema_version"] = kSchema;
  return j.dump() + "\n";
}

std::string report(json j) {
  j["schema_version"] = kSchema;
  return j.dump(2) + "\n";
}

SamplerConfig sampler_config(const RunConfig& c) {
  SamplerConfig s;
  s.domain = c.finite();
  s.q = c.q;
  s.master_seed = c.seed;
  s.num_samples = c.samples;
  s.mode = c.mode;
  s.validate();
  return s;
}

std::vector<SignatureSequence> draw(const RunConfig& c) {
  const SamplerConfig s = sampler_config(c);
  return sample_range(s, 0, s.num_samples);
}

void cmd_count(const RunConfig& c) {
  require_any_domain(c);
  std::cout << count_tilings(c.finite()).get_str() << "\n";
}

void cmd_enumerate(const RunConfig& c) {
  require_any_domain(c);
  const DomainSpec d = c.finite();
  const auto all = enumerate_tilings(d, opt<std::uint64_t>(c, "guard", 1000000));
  std::string text;
  for (std::size_t i = 0; i < all.size(); ++i) {
    text += jsonl_line({{"index", i},
                        {"horizontal", horizontal_domino_count(all[i])},
                        {"weight", tiling_weight(all[i], c.q).get_str()},
                        {"chain", sequence_json(all[i])}});
  }
  emit(c, "tilings.jsonl", text);
}

void cmd_sample(const RunConfig& c) {
  require_any_domain(c);
  const SamplerConfig s = sampler_config(c);
  const auto seqs = sample_range(s, 0, s.num_samples);
  std::string text;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    json line = {{"index", i},
                 {"seed", s.master_seed},
                 {"q", s.q.get_str()},
                 {"mode", s.mode == Arithmetic::exact ? "exact" : "float"},
                 {"domain", domain_json(s.domain)},
                 {"chain", sequence_json(seqs[i])}};
    if (s.mode == Arithmetic::floating) line["approximate"] = true;
    text += jsonl_line(line);
  }
  emit(c, "samples.jsonl", text);
}

void cmd_density_grid(const RunConfig& c) {
  require_any_domain(c);
  const SegmentMeasure m = c.limit();
  const double lo = m.lo(), hi = m.hi();
  std::string text = "# schema_version " + std::to_string(kSchema) + "\nchi,kappa,density,phase\n";
  for (int b = 0; b < c.grid_h; ++b) {
    const double kappa = (b + 0.5) / c.grid_h;
    for (int a = 0; a < c.grid_w; ++a) {
      const double chi = lo + (a + 0.5) * (hi - lo) / c.grid_w;
      const DensityPoint p = density(m, chi, kappa, c.qd());
      text += g17(chi) + "," + g17(kappa) + "," + g17(p.density) + "," + phase_name(p.phase) + "\n";
    }
  }
  emit(c, "density.csv", text);
}

std::vector<svg::Polyline> polylines(const std::vector<std::vector<CurveSample>>& pieces) {
  std::vector<svg::Polyline> out;
  for (const auto& p : pieces) {
    svg::Polyline pl;
    for (const auto& s : p) pl.push_back({s.chi, s.kappa});
    out.push_back(pl);
  }
  return out;
}

void cmd_frozen_boundary(const RunConfig& c) {
  require_any_domain(c);
  const SegmentMeasure m = c.limit();
  const auto pieces = trace_boundary(m, c.qd(), opt<int>(c, "resolution", 2000));
  std::string text = "# schema_version " + std::to_string(kSchema) + "\npiece,t,chi,kappa\n";
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (const auto& s : pieces[i])
      text += std::to_string(i) + "," + g17(s.t) + "," + g17(s.chi) + "," + g17(s.kappa) + "\n";
  emit(c, "frozen_boundary.csv", text);
  if (!c.out.empty())
    emit(c, "frozen_boundary.svg", svg::curves(polylines(pieces), m.lo(), m.hi(), 0, 1, "frozen boundary"));
}

void cmd_dual_curve(const RunConfig& c) {
  require_any_domain(c);
  const SegmentMeasure m = c.limit();
  const double q = c.qd();
  const int res = opt<int>(c, "resolution", 2000);
  const double span = opt<double>(c, "theta_span", 4.0);
  std::string text = "# schema_version " + std::to_string(kSchema) + "\npiece,theta,x,y\n";
  std::vector<svg::Polyline> pieces(1);
  double ymin = 0, ymax = 1;
  int piece = 0;
  for (int k = 0; k <= res; ++k) {
    const double th = -span + 2 * span * k / res;
    Point2 p;
    try {
      p = dual_point(m, th, q);
    } catch (const ValidationError&) {
      if (!pieces.back().empty()) pieces.emplace_back(), ++piece;
      continue;
    }
    if (!std::isfinite(p[1]) || std::abs(p[1]) > 10 * (1 + span)) {
      if (!pieces.back().empty()) pieces.emplace_back(), ++piece;
      continue;
    }
    pieces.back().push_back(p);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
    text += std::to_string(piece) + "," + g17(th) + "," + g17(p[0]) + "," + g17(p[1]) + "\n";
  }
  if (pieces.back().empty()) pieces.pop_back();
  emit(c, "dual_curve.csv", text);
  if (!c.out.empty()) emit(c, "dual_curve.svg", svg::curves(pieces, -span, span, ymin, ymax, "dual curve"));
}

std::vector<MomentKey> moment_keys(const RunConfig& c) {
  std::vector<MomentKey> keys;
  if (!c.raw.contains("moments")) return {{0.5, 1}, {0.5, 2}, {0.25, 1}};
  for (const auto& e : c.raw["moments"]) keys.push_back({e.at(0).get<double>(), e.at(1).get<int>()});
  if (keys.empty()) throw ValidationError("config: moments is empty");
  return keys;
}

void cmd_clt_cov(const RunConfig& c) {
  require_any_domain(c);
  const SegmentMeasure m = c.limit();
  const auto keys = moment_keys(c);
  const std::size_t n = keys.size();
  Eigen::MatrixXd pred(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      pred(a, b) = pred(b, a) = gff_covariance(m, keys[a].kappa, keys[a].j, keys[b].kappa, keys[b].j, c.qd());
  json out = {{"kind", "clt-cov"}, {"q", c.q.get_str()}, {"tolerance", {{"quadrature", 1e-7}, {"se_factor", 3}}}};
  json entries = json::array();
  std::optional<MomentStats> st;
  const long samples = opt<long>(c, "samples", 0);
  if (samples > 0) {
    st = gff_moments(draw(c), keys);
    out["samples"] = st->samples;
    out["domain"] = domain_json(c.finite());
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      json e = {{"kappa1", keys[a].kappa}, {"j1", keys[a].j}, {"kappa2", keys[b].kappa}, {"j2", keys[b].j},
                {"value", real(pred(a, b))}};
      if (st) {
        e["empirical"] = real(st->cov(a, b));
        e["se"] = real(st->cov_se(a, b));
        e["within_tolerance"] = std::abs(st->cov(a, b) - pred(a, b)) <= 3 * st->cov_se(a, b);
      }
      entries.push_back(e);
    }
  out["entries"] = entries;
  emit(c, "clt_cov.json", report(out));
}

void cmd_local_stats(const RunConfig& c) {
  require_any_domain(c);
  const SegmentMeasure m = c.limit();
  const DomainSpec d = c.finite();
  const double kappa = opt<double>(c, "kappa", 0.5);
  const long anchor = opt<long>(c, "anchor", std::lround(d.N * (m.lo() + m.hi()) / 2));
  std::vector<std::vector<long>> sets = {{0}, {0, 1}};
  if (c.raw.contains("offsets")) sets = c.raw["offsets"].get<std::vector<std::vector<long>>>();
  const auto seqs = draw(c);
  json entries = json::array();
  for (const auto& off : sets) {
    const LocalStats ls = local_correlation(seqs, m, kappa, anchor, off, c.qd());
    entries.push_back({{"offsets", off},
                       {"empirical", real(ls.empirical)},
                       {"se", real(ls.se)},
                       {"predicted", real(ls.predicted)},
                       {"density", real(ls.density)},
                       {"within_tolerance", std::abs(ls.empirical - ls.predicted) <= 3 * ls.se}});
  }
  emit(c, "local_stats.json",
       report({{"kind", "local-stats"},
               {"kappa", kappa},
               {"anchor", anchor},
               {"samples", seqs.size()},
               {"tolerance", {{"se_factor", 3}}},
               {"entries", entries}}));
}

void cmd_render(const RunConfig& c, bool arctic, bool paths, long index) {
  require_any_domain(c);
  const SamplerConfig s = sampler_config(c);
  const SignatureSequence seq = sample_tiling(s, static_cast<std::uint64_t>(index));
  svg::TilingLayers layers;
  layers.paths = paths;
  if (arctic) layers.arctic = polylines(trace_boundary(c.limit(), c.qd(), 1000));
  emit(c, "tiling.svg", svg::tiling(sequence_to_vgrid(seq), s.domain, layers));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random domino tilings of rectangular Aztec diamonds"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config, q, grid, out;
  std::optional<std::uint64_t> seed;
  std::optional<long> samples;
  std::optional<int> aztec_n;
  bool exact = false, floating = false;
  app.add_option("--config", config, "JSON run configuration");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--samples", samples, "number of samples");
  app.add_option("--q", q, "q-deformation, rational like 1/3");
  app.add_option("--out", out, "output directory");
  app.add_option("--grid", grid, "grid resolution WxH");
  app.add_option("--aztec", aztec_n, "plain Aztec diamond of order N");
  auto* ex = app.add_flag("--exact", exact, "exact rational arithmetic");
  app.add_flag("--float", floating, "floating point sampler (N > 40)")->excludes(ex);

  bool arctic = false, paths = false;
  long index = 0;
  for (const char* name :
       {"count", "enumerate", "sample", "density-grid", "frozen-boundary", "dual-curve", "clt-cov", "local-stats"})
    app.add_subcommand(name);
  auto* render = app.add_subcommand("render", "SVG of one sampled tiling");
  render->add_flag("--arctic", arctic, "overlay the frozen boundary");
  render->add_flag("--paths", paths, "draw the path ensemble");
  render->add_option("--index", index, "sample index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    RunConfig c = load_config(config);
    if (aztec_n) {
      if (c.domain || c.measure) throw ValidationError("--aztec conflicts with the config domain");
      c.domain = DomainSpec::aztec(*aztec_n);
    }
    if (seed) c.seed = *seed;
    if (samples) {
      c.samples = *samples;
      c.raw["samples"] = *samples;
    }
    if (!q.empty()) c.q = parse_q(q);
    if (!grid.empty()) std::tie(c.grid_w, c.grid_h) = parse_grid(grid);
    if (!out.empty()) c.out = out;
    if (exact) c.mode = Arithmetic::exact;
    if (floating) c.mode = Arithmetic::floating;

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "count") cmd_count(c);
    else if (cmd == "enumerate") cmd_enumerate(c);
    else if (cmd == "sample") cmd_sample(c);
    else if (cmd == "density-grid") cmd_density_grid(c);
    else if (cmd == "frozen-boundary") cmd_frozen_boundary(c);
    else if (cmd == "dual-curve") cmd_dual_curve(c);
    else if (cmd == "clt-cov") cmd_clt_cov(c);
    else if (cmd == "local-stats") cmd_local_stats(c);
    else if (cmd == "render") cmd_render(c, arctic, paths, index);
  } catch (const GuardExceeded& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return 4;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
