#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "acceptance.hpp"
#include "qmetric/bridge.hpp"
#include "qmetric/error.hpp"
#include "qmetric/fixed_point.hpp"
#include "qmetric/lseminorm.hpp"
#include "qmetric/metric_space.hpp"
#include "qmetric/nets.hpp"
#include "qmetric/random.hpp"
#include "qmetric/torus_subgroup.hpp"

namespace qmetric::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Config reading. Every key is consumed explicitly; leftovers are rejected so
// a typo never silently falls back to a default.

class Fields {
 public:
  explicit Fields(const json& j) : j_(j) {
    if (!j_.is_object()) throw Error(ErrorKind::config, "config must be a JSON object", "config");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (!v.is_number()) throw Error(ErrorKind::config, key + " must be a number", key);
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw Error(ErrorKind::config, key + " must be finite", key);
    return x;
  }

  long long integer(const std::string& key, long long fallback, long long lo, long long hi) {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (!v.is_number_integer()) throw Error(ErrorKind::config, key + " must be an integer", key);
    const auto x = v.get<long long>();
    if (x < lo || x > hi) {
      throw Error(ErrorKind::config, key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                  key);
    }
    return x;
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const auto& v = raw(key);
    if (!v.is_string()) throw Error(ErrorKind::config, key + " must be a string", key);
    return v.get<std::string>();
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) throw Error(ErrorKind::config, "unknown config key '" + key + "'", key);
    }
  }

 private:
  const json& j_;
  std::set<std::string> used_;
};

std::uint64_t read_seed(Fields& f) {
  if (!f.has("seed")) return 1;
  const auto& v = f.raw("seed");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw Error(ErrorKind::config, "seed must be a nonnegative integer", "seed");
  }
  return v.get<std::uint64_t>();
}

Tolerances read_tolerances(Fields& f) {
  Tolerances tol;
  if (!f.has("tolerances")) return tol;
  Fields t(f.raw("tolerances"));
  tol.algebraic = t.number("algebraic", tol.algebraic);
  tol.spectral = t.number("spectral", tol.spectral);
  t.finish();
  if (!(tol.algebraic > 0.0)) throw Error(ErrorKind::config, "algebraic tolerance must be positive", "tolerances");
  if (!(tol.spectral > 0.0)) throw Error(ErrorKind::config, "spectral tolerance must be positive", "tolerances");
  return tol;
}

BetaRule read_beta_rule(Fields& f) {
  BetaRule rule;
  if (!f.has("beta_rule")) return rule;
  const auto& v = f.raw("beta_rule");
  std::string kind;
  double value = 0.0;
  bool has_value = false;
  if (v.is_string()) {
    kind = v.get<std::string>();
  } else if (v.is_object()) {
    Fields r(v);
    kind = r.string("kind", "");
    has_value = r.has("value");
    value = r.number("value", 0.0);
    r.finish();
  } else {
    throw Error(ErrorKind::config, "beta_rule must be a string or an object", "beta_rule");
  }
  if (kind == "delta_over_n") {
    rule.kind = BetaRule::Kind::delta_over_n;
  } else if (kind == "fixed") {
    rule.kind = BetaRule::Kind::fixed;
    if (!has_value || !(value > 0.0)) throw Error(ErrorKind::config, "fixed beta needs a value > 0", "beta");
  } else if (kind == "fraction_of_delta") {
    rule.kind = BetaRule::Kind::fraction_of_delta;
    if (!has_value || !(value > 0.0) || value > 1.0) {
      throw Error(ErrorKind::config, "fraction_of_delta needs a value in (0, 1]", "beta_rule");
    }
  } else {
    throw Error(ErrorKind::config, "beta_rule kind must be delta_over_n, fixed or fraction_of_delta", "beta_rule");
  }
  rule.value = value;
  return rule;
}

json beta_rule_json(const BetaRule& rule) {
  switch (rule.kind) {
    case BetaRule::Kind::delta_over_n: return {{"kind", "delta_over_n"}};
    case BetaRule::Kind::fixed: return {{"kind", "fixed"}, {"value", rule.value}};
    case BetaRule::Kind::fraction_of_delta: return {{"kind", "fraction_of_delta"}, {"value", rule.value}};
  }
  return {};
}

Regime read_regime(Fields& f) {
  const auto r = f.string("regime", "corollary");
  if (r == "corollary") return Regime::corollary;
  if (r == "theorem") return Regime::theorem;
  throw Error(ErrorKind::config, "regime must be corollary or theorem", "regime");
}

std::string regime_name(Regime r) { return r == Regime::corollary ? "corollary" : "theorem"; }

std::size_t read_count(Fields& f, const std::string& key, std::size_t fallback, std::size_t hi) {
  return static_cast<std::size_t>(f.integer(key, static_cast<long long>(fallback), 1, static_cast<long long>(hi)));
}

// A finite space to work on: either a generator with a net size, or a file.
struct SpaceSource {
  std::optional<SpaceGenerator> generator;
  std::string input;
  std::optional<std::size_t> n;
};

SpaceSource read_space_source(Fields& f, bool n_required_for_generator) {
  SpaceSource s;
  if (f.has("generator") == f.has("input")) {
    throw Error(ErrorKind::config, "exactly one of 'generator' or 'input' is required", "generator");
  }
  if (f.has("generator")) s.generator = generator_from_json(f.raw("generator"));
  if (f.has("input")) {
    s.input = f.string("input", "");
    if (s.input.empty()) throw Error(ErrorKind::config, "input path is empty", "input");
  }
  if (f.has("n")) {
    s.n = static_cast<std::size_t>(f.integer("n", 0, 1, 1 << 20));
  } else if (s.generator && n_required_for_generator) {
    throw Error(ErrorKind::config, "n is required with a generator", "n");
  }
  return s;
}

json source_json(const SpaceSource& s) {
  json j;
  if (s.generator) j["generator"] = generator_to_json(*s.generator);
  if (!s.input.empty()) j["input"] = s.input;
  if (s.n) j["n"] = *s.n;
  return j;
}

// Net of a file space: its first n points, with the exact Hausdorff distance
// to the whole file.
struct LoadedNet {
  FiniteMetricSpace net;
  double haus;
  std::string label;
};

LoadedNet load_file_net(const std::string& path, std::optional<std::size_t> n, const Tolerances& tol) {
  const auto space = read_metric_space_file(path, tol);
  const std::size_t size = n.value_or(space.size());
  if (size > space.size()) {
    throw Error(ErrorKind::config, "n exceeds the number of points in " + path, "n");
  }
  std::vector<std::size_t> all(space.size());
  std::iota(all.begin(), all.end(), 0);
  const std::vector<std::size_t> first(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
  const auto k = static_cast<Eigen::Index>(size);
  std::vector<std::string> labels(space.labels().begin(), space.labels().begin() + static_cast<std::ptrdiff_t>(size));
  return {FiniteMetricSpace(std::move(labels), space.distances().topLeftCorner(k, k), tol),
          hausdorff_distance(space, all, first), "file:" + path};
}

struct BuiltPair {
  ApproximationPair pair;
  double haus;
  std::string label;
};

BuiltPair build_pair(const SpaceSource& s, const BetaRule& rule, Regime regime, const Tolerances& tol) {
  if (s.generator) {
    auto a = approximate_compact_space(*s.generator, *s.n, rule, regime);
    return {std::move(a.pair), a.haus, describe(*s.generator)};
  }
  auto loaded = load_file_net(s.input, s.n, tol);
  const double delta = min_separation(loaded.net);
  const double beta = rule.beta(delta, loaded.net.size());
  return {ApproximationPair(std::move(loaded.net), beta, regime), loaded.haus, loaded.label};
}

FiniteMetricSpace build_space(const SpaceSource& s, const Tolerances& tol) {
  if (s.generator) return epsilon_net(*s.generator, *s.n).space;
  return load_file_net(s.input, s.n, tol).net;
}

std::string csv_number(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

// ---------------------------------------------------------------------------
// Commands. Each parses everything first, then computes.

json cmd_approximate(const json& config, std::vector<Artifact>&) {
  Fields f(config);
  const auto source = read_space_source(f, true);
  const auto rule = read_beta_rule(f);
  const auto regime = read_regime(f);
  const auto samples = read_count(f, "reach_samples", 16, 100000);
  const auto seed = read_seed(f);
  const auto tol = read_tolerances(f);
  f.finish();

  json resolved = source_json(source);
  resolved["beta_rule"] = beta_rule_json(rule);
  resolved["regime"] = regime_name(regime);
  resolved["reach_samples"] = samples;
  resolved["seed"] = seed;
  resolved["tolerances"] = {{"algebraic", tol.algebraic}, {"spectral", tol.spectral}};

  const auto built = build_pair(source, rule, regime, tol);
  const auto& pair = built.pair;
  const auto cert = certify_reach_upper(pair);
  const auto estimate = estimate_reach_lower(pair, {.samples = samples, .seed = seed});

  auto direction = [](const DirectionBound& d) {
    return json{{"direction", d.direction}, {"witness", d.witness}, {"worst_case", d.worst_case}};
  };
  return {{"command", "approximate"},
          {"config", resolved},
          {"generator", built.label},
          {"n", pair.dim()},
          {"delta", pair.delta()},
          {"beta", pair.beta()},
          {"haus", built.haus},
          {"certified_bound", built.haus + pair.beta()},
          {"sampled_lower", estimate.value},
          {"sampled_lower_label", ReachEstimate::label},
          {"D_constant", pair.leibniz_constant()},
          {"regime", regime_name(regime)},
          {"reach_certificate",
           {{"upper_bound", cert.upper_bound},
            {"height", UnitPivotBridge::height()},
            {"to_matrices", direction(cert.to_matrices)},
            {"to_functions", direction(cert.to_functions)}}},
          {"seed", seed}};
}

json cmd_converge(const json& config, std::vector<Artifact>& artifacts) {
  Fields f(config);
  if (!f.has("generator")) throw Error(ErrorKind::config, "converge needs a generator", "generator");
  const auto generator = generator_from_json(f.raw("generator"));
  if (!f.has("n_list")) throw Error(ErrorKind::config, "n_list is required", "n_list");
  std::vector<std::size_t> n_list;
  const auto& list = f.raw("n_list");
  if (!list.is_array() || list.empty()) throw Error(ErrorKind::config, "n_list must be a nonempty array", "n_list");
  for (const auto& v : list) {
    if (!v.is_number_integer() || v.get<long long>() < 1) {
      throw Error(ErrorKind::config, "n_list entries must be positive integers", "n_list");
    }
    n_list.push_back(v.get<std::size_t>());
  }
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw Error(ErrorKind::config, "n_list must be strictly increasing", "n_list");
  }
  const auto rule = read_beta_rule(f);
  const auto seed = read_seed(f);
  f.finish();

  const json resolved = {{"generator", generator_to_json(generator)},
                         {"n_list", n_list},
                         {"beta_rule", beta_rule_json(rule)},
                         {"seed", seed}};
  const auto report = convergence_experiment(generator, n_list, rule);

  json rows = json::array();
  std::ostringstream csv;
  csv << "n,delta,beta,haus,certified_bound\n";
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n}, {"delta", r.delta}, {"beta", r.beta}, {"haus", r.haus},
                    {"certified_bound", r.certified_bound}});
    csv << r.n << ',' << csv_number(r.delta) << ',' << csv_number(r.beta) << ',' << csv_number(r.haus) << ','
        << csv_number(r.certified_bound) << '\n';
  }
  artifacts.push_back({"converge.csv", csv.str()});
  return {{"command", "converge"},
          {"config", resolved},
          {"generator", describe(generator)},
          {"rows", rows},
          {"strictly_decreasing", report.strictly_decreasing},
          {"non_increasing", report.non_increasing},
          {"seed", seed}};
}

json cmd_leibniz(const json& config, std::vector<Artifact>& artifacts) {
  Fields f(config);
  const auto source = read_space_source(f, true);
  const auto rule = read_beta_rule(f);
  const auto regime = read_regime(f);
  const auto pairs = read_count(f, "pairs", 1000, 10000000);
  const auto seed = read_seed(f);
  const auto tol = read_tolerances(f);
  f.finish();

  json resolved = source_json(source);
  resolved["beta_rule"] = beta_rule_json(rule);
  resolved["regime"] = regime_name(regime);
  resolved["pairs"] = pairs;
  resolved["seed"] = seed;
  resolved["tolerances"] = {{"algebraic", tol.algebraic}, {"spectral", tol.spectral}};

  const auto built = build_pair(source, rule, regime, tol);
  const auto& pair = built.pair;
  const std::size_t n = pair.dim();
  const double d = pair.leibniz_constant();
  const auto ball = sample_unit_ball(pair, 256, derive_seed(seed, 0));
  static const char* kinds[] = {"gaussian", "unit_ball", "diagonal_plus_off_diagonal"};

  double min_jordan = std::numeric_limits<double>::infinity();
  double min_lie = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  std::ostringstream csv;
  csv << "pair,kind,norm_a,norm_b,L_a,L_b,L_jordan,L_lie,residual_jordan,residual_lie\n";
  for (std::size_t t = 0; t < pairs; ++t) {
    Rng rng(derive_seed(seed, t + 1));
    const int kind = static_cast<int>(t % 3);
    auto draw = [&]() -> MatrixElement {
      switch (kind) {
        case 0: return random_self_adjoint(n, rng);
        case 1: return ball[rng.index(ball.size())];
        default: {
          Eigen::VectorXd v(static_cast<Eigen::Index>(n));
          for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.normal();
          return embed_diagonal(pair.rho(), RealFunction(v)) + random_zero_diagonal_self_adjoint(n, rng);
        }
      }
    };
    const auto a = draw();
    const auto b = draw();
    const double na = operator_norm(a);
    const double nb = operator_norm(b);
    const double la = l_seminorm(pair, a);
    const double lb = l_seminorm(pair, b);
    const double lj = l_seminorm(pair, jordan_product(a, b));
    const double ll = l_seminorm(pair, lie_product(a, b));
    const double bound = d * (na * lb + la * nb);
    const double rj = bound - lj;
    const double rl = bound - ll;
    min_jordan = std::min(min_jordan, rj);
    min_lie = std::min(min_lie, rl);
    if (rj < -tol.spectral || rl < -tol.spectral) ++violations;
    csv << t << ',' << kinds[kind] << ',' << csv_number(na) << ',' << csv_number(nb) << ',' << csv_number(la) << ','
        << csv_number(lb) << ',' << csv_number(lj) << ',' << csv_number(ll) << ',' << csv_number(rj) << ','
        << csv_number(rl) << '\n';
  }
  artifacts.push_back({"leibniz.csv", csv.str()});
  return {{"command", "leibniz"},
          {"config", resolved},
          {"generator", built.label},
          {"n", n},
          {"delta", pair.delta()},
          {"beta", pair.beta()},
          {"D_constant", d},
          {"regime", regime_name(regime)},
          {"pairs", pairs},
          {"min_jordan_residual", min_jordan},
          {"min_lie_residual", min_lie},
          {"violations", violations},
          {"holds", violations == 0},
          {"seed", seed}};
}

json cmd_mk(const json& config, std::vector<Artifact>& artifacts) {
  Fields f(config);
  const auto source = read_space_source(f, true);
  std::vector<Eigen::VectorXd> weights;
  const bool explicit_measures = f.has("measures");
  if (explicit_measures) {
    const auto& m = f.raw("measures");
    if (!m.is_array() || m.empty()) throw Error(ErrorKind::config, "measures must be a nonempty array", "measures");
    for (const auto& w : m) {
      if (!w.is_array()) throw Error(ErrorKind::config, "each measure is an array of weights", "measures");
      Eigen::VectorXd v(static_cast<Eigen::Index>(w.size()));
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (!w[i].is_number()) throw Error(ErrorKind::config, "weights must be numbers", "measures");
        v(static_cast<Eigen::Index>(i)) = w[i].get<double>();
      }
      weights.push_back(v);
    }
  }
  const auto seed = read_seed(f);
  const auto tol = read_tolerances(f);
  f.finish();

  const auto space = build_space(source, tol);
  const std::size_t n = space.size();
  std::vector<ProbabilityMeasure> measures;
  std::vector<std::string> names;
  if (explicit_measures) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (static_cast<std::size_t>(weights[i].size()) != n) {
        throw Error(ErrorKind::config, "measure " + std::to_string(i) + " has the wrong length", "measures");
      }
      try {
        measures.emplace_back(weights[i]);
      } catch (const Error& e) {
        throw Error(e.kind(), "measure " + std::to_string(i) + " is not a probability vector", "measures");
      }
      names.push_back("mu" + std::to_string(i));
    }
  } else {
    for (std::size_t x = 0; x < n; ++x) {
      measures.push_back(ProbabilityMeasure::dirac(n, x));
      names.push_back("delta_" + space.labels()[x]);
    }
    measures.push_back(ProbabilityMeasure::uniform(n));
    names.push_back("uniform");
  }

  json resolved = source_json(source);
  if (explicit_measures) {
    json m = json::array();
    for (const auto& w : weights) m.push_back(std::vector<double>(w.data(), w.data() + w.size()));
    resolved["measures"] = m;
  }
  resolved["seed"] = seed;
  resolved["tolerances"] = {{"algebraic", tol.algebraic}, {"spectral", tol.spectral}};

  const std::size_t k = measures.size();
  json table = json::array();
  std::ostringstream csv;
  csv << "i,j,name_i,name_j,distance\n";
  for (std::size_t i = 0; i < k; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < k; ++j) {
      const double v = i == j ? 0.0 : mk_distance(space, measures[i], measures[j]);
      row.push_back(v);
      csv << i << ',' << j << ',' << names[i] << ',' << names[j] << ',' << csv_number(v) << '\n';
    }
    table.push_back(row);
  }
  // MK between Dirac measures reproduces the metric.
  double dirac_deviation = 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      dirac_deviation = std::max(dirac_deviation, std::abs(mk_distance(space, ProbabilityMeasure::dirac(n, x),
                                                                       ProbabilityMeasure::dirac(n, y)) -
                                                           space(x, y)));
    }
  }
  artifacts.push_back({"mk.csv", csv.str()});
  return {{"command", "mk"},
          {"config", resolved},
          {"n", n},
          {"labels", space.labels()},
          {"diameter", n > 1 ? diameter(space) : 0.0},
          {"min_separation", n > 1 ? min_separation(space) : 0.0},
          {"measures", names},
          {"distances", table},
          {"dirac_max_deviation", dirac_deviation},
          {"seed", seed}};
}

std::vector<GroupElement> read_generators(Fields& f, const std::string& key, std::vector<GroupElement> fallback) {
  if (!f.has(key)) return fallback;
  const auto& v = f.raw(key);
  if (!v.is_array()) throw Error(ErrorKind::config, key + " must be an array of [j, k] pairs", key);
  std::vector<GroupElement> out;
  for (const auto& g : v) {
    if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer()) {
      throw Error(ErrorKind::config, key + " entries must be [j, k] integer pairs", key);
    }
    out.push_back({g[0].get<int>(), g[1].get<int>()});
  }
  return out;
}

json generators_json(const std::vector<GroupElement>& gens) {
  json out = json::array();
  for (const auto& g : gens) out.push_back({g.j, g.k});
  return out;
}

struct LengthChoice {
  std::string kind = "max_angle";
  std::vector<std::vector<double>> table;
};

LengthChoice read_length(Fields& f) {
  LengthChoice c;
  if (!f.has("length")) return c;
  Fields l(f.raw("length"));
  c.kind = l.string("kind", "max_angle");
  if (c.kind == "table") {
    if (!l.has("values")) throw Error(ErrorKind::config, "length table needs 'values'", "length");
    try {
      c.table = l.raw("values").get<std::vector<std::vector<double>>>();
    } catch (const json::exception&) {
      throw Error(ErrorKind::config, "length values must be a q x q array of numbers", "length");
    }
  } else if (c.kind != "max_angle") {
    throw Error(ErrorKind::config, "length kind must be max_angle or table", "length");
  }
  l.finish();
  return c;
}

LengthFn make_length(const LengthChoice& c, int q) {
  if (c.kind == "max_angle") return LengthFn::max_angle(q);
  if (c.table.size() != static_cast<std::size_t>(q)) {
    throw Error(ErrorKind::config, "length table must be q x q", "length");
  }
  for (const auto& row : c.table) {
    if (row.size() != static_cast<std::size_t>(q)) throw Error(ErrorKind::config, "length table must be q x q", "length");
  }
  const auto table = c.table;
  return LengthFn::custom(q, [table](GroupElement g) {
    return table[static_cast<std::size_t>(g.j)][static_cast<std::size_t>(g.k)];
  });
}

json chain_rows_json(int q, int p, const std::vector<ChainRow>& rows, std::ostringstream& csv) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"m", r.m}, {"subgroup_size", r.subgroup_size}, {"fixed_dim", r.fixed_dim}, {"haus_ell", r.haus},
                   {"gap_sampled", r.gap}, {"reach", r.reach}});
    csv << q << ',' << p << ',' << r.m << ',' << r.subgroup_size << ',' << r.fixed_dim << ',' << csv_number(r.haus)
        << ',' << csv_number(r.gap) << ',' << csv_number(r.reach) << '\n';
  }
  return out;
}

json cmd_fixedpoint(const json& config, std::vector<Artifact>& artifacts) {
  Fields f(config);
  const int q = static_cast<int>(f.integer("q", 12, 2, 24));
  const int p = static_cast<int>(f.integer("p", 1, -1000000, 1000000));
  if (std::gcd(positive_mod(p, q), q) != 1) throw Error(ErrorKind::config, "p must be coprime to q", "p");
  const auto h_gens = read_generators(f, "H", {});
  const auto hp_gens = read_generators(f, "H_prime", {{1, 0}});
  const auto samples = static_cast<std::size_t>(f.integer("samples", 64, 0, 100000));
  const auto length_choice = read_length(f);
  std::vector<int> sweep{4, 6, 8, 12};
  if (f.has("sweep_q")) {
    try {
      sweep = f.raw("sweep_q").get<std::vector<int>>();
    } catch (const json::exception&) {
      throw Error(ErrorKind::config, "sweep_q must be an array of integers", "sweep_q");
    }
    for (int s : sweep) {
      if (s < 2 || s > 24) throw Error(ErrorKind::config, "sweep_q entries must lie in [2, 24]", "sweep_q");
    }
  }
  const auto seed = read_seed(f);
  f.finish();
  if (length_choice.kind == "table" && !sweep.empty()) {
    throw Error(ErrorKind::config, "a length table fixes q; set sweep_q to [] with it", "sweep_q");
  }

  const FuzzyTorus torus(q, p);
  const auto length = make_length(length_choice, q);
  const auto h = TorusSubgroup::generated_by(q, h_gens);
  const auto hp = TorusSubgroup::generated_by(q, hp_gens);

  json resolved = {{"q", q},
                   {"p", p},
                   {"H", generators_json(h_gens)},
                   {"H_prime", generators_json(hp_gens)},
                   {"samples", samples},
                   {"sweep_q", sweep},
                   {"seed", seed}};
  resolved["length"] = length_choice.kind == "table" ? json{{"kind", "table"}, {"values", length_choice.table}}
                                                     : json{{"kind", "max_angle"}};

  const auto sample_set = sample_action_unit_sphere(torus, length, samples, seed);
  const auto report = fixed_point_bridge(torus, length, h, hp, sample_set, true);
  std::ostringstream csv;
  csv << "q,p,m,subgroup_size,fixed_dim,haus_ell,gap_sampled,reach\n";
  const json chain = chain_rows_json(q, p, divisor_chain_sweep(torus, length, sample_set), csv);

  json sweep_json = json::array();
  for (int sq : sweep) {
    const int sp = std::gcd(positive_mod(p, sq), sq) == 1 ? p : 1;
    const FuzzyTorus st(sq, sp);
    const auto sl = LengthFn::max_angle(sq);
    const auto ss = sample_action_unit_sphere(st, sl, samples, derive_seed(seed, static_cast<std::uint64_t>(sq)));
    sweep_json.push_back({{"q", sq}, {"p", sp}, {"rows", chain_rows_json(sq, sp, divisor_chain_sweep(st, sl, ss), csv)}});
  }
  artifacts.push_back({"fixedpoint.csv", csv.str()});

  return {{"command", "fixedpoint"},
          {"config", resolved},
          {"model", "fuzzy torus M_q with the dual action of Z_q x Z_q (finite stand-in for the quantum torus)"},
          {"q", q},
          {"p", p},
          {"H_generators", generators_json(h_gens)},
          {"H'_generators", generators_json(hp_gens)},
          {"H_order", h.size()},
          {"H'_order", hp.size()},
          {"haus_ell", subgroup_hausdorff(length, h, hp)},
          {"gap_sampled", expectation_gap(torus, h, hp, sample_set)},
          {"gap_label", ReachEstimate::label},
          {"reach_report",
           {{"left_to_right", report.left_to_right},
            {"right_to_left", report.right_to_left},
            {"reach", report.reach},
            {"label", ReachEstimate::label},
            {"witness_l_excess", report.witness_l_excess}}},
          {"dims", {{"A_H", report.dim_left}, {"A_H'", report.dim_right}}},
          {"samples", {{"structured", sample_set.structured}, {"random", sample_set.elements.size() - sample_set.structured}}},
          {"chain", chain},
          {"q_sweep", sweep_json},
          {"seed", seed}};
}

json cmd_selftest(const json& config, std::vector<Artifact>&, int& exit_code) {
  Fields f(config);
  acceptance::Options options;
  options.seed = f.has("seed") ? read_seed(f) : options.seed;
  options.data_dir = f.string("data_dir", acceptance::default_data_dir());
  std::vector<int> only;
  if (f.has("criteria")) {
    try {
      only = f.raw("criteria").get<std::vector<int>>();
    } catch (const json::exception&) {
      throw Error(ErrorKind::config, "criteria must be an array of integers", "criteria");
    }
    for (int c : only) {
      if (c < 1 || c > 9) throw Error(ErrorKind::config, "criteria ids lie in [1, 9]", "criteria");
    }
  }
  f.finish();

  const auto results = acceptance::run_all(options, only);
  bool passed = true;
  json list = json::array();
  for (const auto& r : results) {
    passed = passed && r.passed;
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"detail", r.detail},
                    {"checks", r.checks},
                    {"limit_seconds", r.limit_seconds},
                    {"line", acceptance::format_line(r)}});
  }
  exit_code = passed ? kExitSuccess : kExitAcceptance;
  return {{"command", "selftest"},
          {"config", {{"seed", options.seed}, {"data_dir", options.data_dir}, {"criteria", only}}},
          {"criteria", list},
          {"passed", passed},
          {"seed", options.seed}};
}

json error_json(const std::string& kind, const std::string& field, const std::string& message) {
  return {{"error", {{"kind", kind}, {"field", field}, {"message", message}}}};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"approximate", "converge", "leibniz", "mk", "fixedpoint", "selftest"};
  return names;
}

Outcome run(const std::string& command, const json& config_in) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    json config = config_in.is_null() ? json::object() : config_in;
    if (config.is_object() && config.contains("command")) {
      if (config["command"] != command) {
        throw Error(ErrorKind::config, "config is for command " + config["command"].dump(), "command");
      }
      config.erase("command");
    }
    std::vector<Artifact> artifacts;
    int exit_code = kExitSuccess;
    if (command == "approximate") {
      out.json = cmd_approximate(config, artifacts);
    } else if (command == "converge") {
      out.json = cmd_converge(config, artifacts);
    } else if (command == "leibniz") {
      out.json = cmd_leibniz(config, artifacts);
    } else if (command == "mk") {
      out.json = cmd_mk(config, artifacts);
    } else if (command == "fixedpoint") {
      out.json = cmd_fixedpoint(config, artifacts);
    } else if (command == "selftest") {
      out.json = cmd_selftest(config, artifacts, exit_code);
    } else {
      throw Error(ErrorKind::config, "unknown command '" + command + "'", "command");
    }
    out.json["runtime_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.exit_code = exit_code;
    out.artifacts.push_back({command + ".json", dump(out.json)});
    for (auto& a : artifacts) out.artifacts.push_back(std::move(a));
  } catch (const Error& e) {
    out = {kExitValidation, error_json(std::string(to_string(e.kind())), e.field(), e.what()), {}};
  } catch (const json::exception& e) {
    out = {kExitValidation, error_json("Config", "config", e.what()), {}};
  } catch (const std::exception& e) {
    out = {kExitInternal, error_json("Internal", "", e.what()), {}};
  }
  return out;
}

std::string resolve_output_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return ".";
}

void write_artifacts(const std::string& dir, const Outcome& outcome) {
  std::filesystem::create_directories(dir);
  for (const auto& a : outcome.artifacts) {
    const auto path = std::filesystem::path(dir) / a.filename;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    file << a.content;
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qmetric::cli
