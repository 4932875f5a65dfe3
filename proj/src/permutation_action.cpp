#include "qmetric/permutation_action.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <string>

#include "qmetric/error.hpp"
#include "qmetric/random.hpp"

namespace qmetric {

namespace {

bool is_permutation_of(const Permutation& p, std::size_t n) {
  if (p.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (auto x : p) {
    if (x >= n || hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

// (p then g)(x) = g(p(x)).
Permutation compose(const Permutation& p, const Permutation& g) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = g[p[i]];
  return out;
}

Permutation identity(std::size_t n) {
  Permutation id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  return id;
}

}  // namespace

PermutationGroup PermutationGroup::generated_by(std::size_t n, std::vector<Permutation> generators) {
  for (const auto& g : generators) {
    if (!is_permutation_of(g, n)) {
      throw Error(ErrorKind::input_shape, "generator is not a permutation of " + std::to_string(n) + " points");
    }
  }
  std::set<Permutation> seen{identity(n)};
  std::deque<Permutation> frontier{identity(n)};
  while (!frontier.empty()) {
    const Permutation x = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators) {
      Permutation y = compose(x, g);
      if (seen.insert(y).second) frontier.push_back(std::move(y));
    }
  }
  return PermutationGroup(n, std::vector<Permutation>(seen.begin(), seen.end()), std::move(generators));
}

bool PermutationGroup::contains(const Permutation& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

bool PermutationGroup::is_subgroup_of(const PermutationGroup& other) const {
  return n_ == other.n_ && std::includes(other.elements_.begin(), other.elements_.end(),
                                         elements_.begin(), elements_.end());
}

std::vector<std::vector<std::size_t>> PermutationGroup::orbits() const {
  std::vector<char> assigned(n_, 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t x = 0; x < n_; ++x) {
    if (assigned[x]) continue;
    std::set<std::size_t> orbit;
    for (const auto& h : elements_) orbit.insert(h[x]);
    for (auto y : orbit) assigned[y] = 1;
    out.emplace_back(orbit.begin(), orbit.end());
  }
  return out;
}

std::vector<PermutationGroup> PermutationGroup::subgroups() const {
  std::vector<PermutationGroup> found;
  auto add = [&found](PermutationGroup g) {
    for (const auto& f : found) {
      if (f.elements_ == g.elements_) return false;
    }
    found.push_back(std::move(g));
    return true;
  };
  for (const auto& e : elements_) add(generated_by(n_, {e}));
  // Joins of pairs until nothing new appears; every subgroup is a join of
  // the cyclic subgroups it contains.
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t count = found.size();
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = a + 1; b < count; ++b) {
        auto gens = found[a].generators_;
        gens.insert(gens.end(), found[b].generators_.begin(), found[b].generators_.end());
        grew = add(generated_by(n_, std::move(gens))) || grew;
      }
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const PermutationGroup& x, const PermutationGroup& y) { return x.size() < y.size(); });
  return found;
}

Permutation rotation(std::size_t n, std::size_t shift) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (i + shift) % n;
  return p;
}

RealFunction orbit_average(const PermutationGroup& h, const RealFunction& f) {
  if (f.size() != h.degree()) throw Error(ErrorKind::input_shape, "function size differs from the group degree");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(f.size()));
  for (const auto& p : h.elements()) {
    for (std::size_t x = 0; x < f.size(); ++x) out(static_cast<Eigen::Index>(x)) += f[p[x]];
  }
  return RealFunction(out / static_cast<double>(h.size()));
}

FiniteMetricSpace quotient_space(const FiniteMetricSpace& space, const PermutationGroup& h) {
  if (h.degree() != space.size()) throw Error(ErrorKind::config, "group degree differs from the space size");
  const auto orbits = h.orbits();
  const auto k = static_cast<Eigen::Index>(orbits.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k, k);
  std::vector<std::string> labels;
  for (Eigen::Index a = 0; a < k; ++a) {
    std::string label = "{";
    for (std::size_t t = 0; t < orbits[a].size(); ++t) {
      label += (t ? "," : "") + space.labels()[orbits[a][t]];
    }
    labels.push_back(label + "}");
    for (Eigen::Index b = 0; b < k; ++b) {
      if (a == b) continue;
      double best = std::numeric_limits<double>::infinity();
      for (auto x : orbits[a]) {
        for (auto y : orbits[b]) best = std::min(best, space(x, y));
      }
      d(a, b) = best;
    }
  }
  // Shortest-path closure turns the orbit gap function into a metric.
  for (Eigen::Index m = 0; m < k; ++m) {
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < k; ++b) d(a, b) = std::min(d(a, b), d(a, m) + d(m, b));
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

CommutativeFixedPointReport commutative_fixed_point_check(const FiniteMetricSpace& space,
                                                          const PermutationGroup& g,
                                                          const PermutationGroup& h,
                                                          std::size_t samples, std::uint64_t seed,
                                                          const Tolerances& tol) {
  const std::size_t n = space.size();
  if (g.degree() != n || h.degree() != n) {
    throw Error(ErrorKind::config, "group degree differs from the space size", "group");
  }
  if (!h.is_subgroup_of(g)) throw Error(ErrorKind::config, "H is not a subgroup of G", "subgroup");
  const double slack = tol.algebraic * std::max(1.0, diameter(space));
  for (const auto& p : g.elements()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(space(p[i], p[j]) - space(i, j)) > slack) {
          throw Error(ErrorKind::action_not_isometric,
                      "permutation moves d(" + space.labels()[i] + ", " + space.labels()[j] + ")");
        }
      }
    }
  }

  CommutativeFixedPointReport report;
  report.orbit_count = h.orbits().size();
  report.quotient_size = quotient_space(space, h).size();

  const auto k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd averaging = Eigen::MatrixXd::Zero(k, k);
  for (const auto& p : h.elements()) {
    for (std::size_t x = 0; x < n; ++x) averaging(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(p[x])) += 1.0;
  }
  averaging /= static_cast<double>(h.size());
  Eigen::FullPivLU<Eigen::MatrixXd> lu(averaging);
  lu.setThreshold(tol.spectral);
  report.fixed_dimension = static_cast<std::size_t>(lu.rank());

  // Lipschitz-ball samples: the distance functions d(x, ·) (extreme points
  // that often realize the sup) and random functions rescaled to Lip = 1.
  std::vector<RealFunction> ball;
  for (std::size_t x = 0; x < n; ++x) ball.emplace_back(space.distances().row(static_cast<Eigen::Index>(x)).transpose());
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, s));
    Eigen::VectorXd v(k);
    for (Eigen::Index i = 0; i < k; ++i) v(i) = rng.normal();
    ball.emplace_back(std::move(v));
  }
  for (auto& f : ball) {
    const double lip = lipschitz_seminorm(space, f);
    if (lip > 0.0) f = RealFunction(f.values() / lip);
    const RealFunction avg = orbit_average(h, f);
    report.max_lip_excess = std::max(report.max_lip_excess, lipschitz_seminorm(space, avg) - lipschitz_seminorm(space, f));
    report.reach_sampled = std::max(report.reach_sampled, (f.values() - avg.values()).cwiseAbs().maxCoeff());
  }
  report.samples = ball.size();

  for (std::size_t x = 0; x < n; ++x) {
    Eigen::VectorXd orbit_measure = Eigen::VectorXd::Zero(k);
    for (const auto& p : h.elements()) {
      orbit_measure(static_cast<Eigen::Index>(p[x])) += 1.0 / static_cast<double>(h.size());
      report.orbit_radius = std::max(report.orbit_radius, space(x, p[x]));
    }
    orbit_measure /= orbit_measure.sum();
    report.reach_exact = std::max(report.reach_exact, mk_distance(space, ProbabilityMeasure::dirac(n, x),
                                                                  ProbabilityMeasure(orbit_measure)));
  }
  return report;
}

}  // namespace qmetric
