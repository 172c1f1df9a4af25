#include "crep/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "crep/error.hpp"

namespace crep::solver {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<LabelPair> same_side_complement(const std::vector<int>& labels,
                                            const std::vector<LabelPair>& touching) {
  std::vector<LabelPair> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      const int a = labels[i];
      const int b = labels[j];
      if (chains::octuple_side(a) != chains::octuple_side(b)) continue;
      const bool touches = std::any_of(touching.begin(), touching.end(), [&](const LabelPair& p) {
        return (p.first == a && p.second == b) || (p.first == b && p.second == a);
      });
      if (!touches) out.emplace_back(a, b);
    }
  }
  return out;
}

constexpr double kLogRadiusBound = 40.0;

// Index-resolved copy of a system, used by the objective.
struct Compiled {
  int n = 0;
  std::vector<std::pair<int, int>> eq, ord, dis;
  double margin = 0.0;
};

Compiled compile(const ConstraintSystem& sys) {
  Compiled c;
  c.n = static_cast<int>(sys.labels.size());
  c.margin = sys.margin;
  auto resolve = [&](const std::vector<LabelPair>& in, std::vector<std::pair<int, int>>& out) {
    for (auto [a, b] : in) out.emplace_back(sys.position(a), sys.position(b));
  };
  resolve(sys.equalities, c.eq);
  resolve(sys.ordering, c.ord);
  resolve(sys.disjoint, c.dis);
  return c;
}

// Parameters: interior abscissae t[1..n-2] followed by log-radii for all n
// circles; t[0] = 0 and t[n-1] = 1.
struct Objective {
  const Compiled& sys;

  int dim() const { return (sys.n - 2) + sys.n; }

  // Keeps log-radii in a range where exp() neither underflows nor overflows.
  void clamp(std::vector<double>& x) const {
    for (int i = sys.n - 2; i < dim(); ++i) x[i] = std::clamp(x[i], -kLogRadiusBound, kLogRadiusBound);
  }

  void decode(const std::vector<double>& x, std::vector<double>& t, std::vector<double>& r) const {
    const int n = sys.n;
    t.assign(n, 0.0);
    r.assign(n, 0.0);
    t[n - 1] = 1.0;
    for (int i = 1; i < n - 1; ++i) t[i] = x[i - 1];
    for (int i = 0; i < n; ++i) r[i] = std::exp(x[n - 2 + i]);
  }

  // Sum of squared residuals; fills `grad` when non-null.
  double operator()(const std::vector<double>& x, std::vector<double>* grad) const {
    const int n = sys.n;
    std::vector<double> t, r;
    decode(x, t, r);
    std::vector<double> gt(n, 0.0), gr(n, 0.0);
    double f = 0.0;
    for (auto [i, j] : sys.eq) {
      const double dt = t[j] - t[i];
      const double e = dt * dt - 4.0 * r[i] * r[j];
      f += e * e;
      gt[j] += 2.0 * e * 2.0 * dt;
      gt[i] -= 2.0 * e * 2.0 * dt;
      gr[i] -= 2.0 * e * 4.0 * r[i] * r[j];
      gr[j] -= 2.0 * e * 4.0 * r[i] * r[j];
    }
    for (auto [i, j] : sys.ord) {
      const double h = sys.margin - (t[j] - t[i]);
      if (h <= 0.0) continue;
      f += h * h;
      gt[j] -= 2.0 * h;
      gt[i] += 2.0 * h;
    }
    for (auto [i, j] : sys.dis) {
      const double dt = t[j] - t[i];
      const double h = 4.0 * r[i] * r[j] - dt * dt;
      if (h <= 0.0) continue;
      f += h * h;
      gr[i] += 2.0 * h * 4.0 * r[i] * r[j];
      gr[j] += 2.0 * h * 4.0 * r[i] * r[j];
      gt[i] += 2.0 * h * 2.0 * dt;
      gt[j] -= 2.0 * h * 2.0 * dt;
    }
    if (grad != nullptr) {
      grad->assign(dim(), 0.0);
      for (int i = 1; i < n - 1; ++i) (*grad)[i - 1] = gt[i];
      for (int i = 0; i < n; ++i) (*grad)[n - 2 + i] = gr[i];
    }
    return f;
  }
};

std::vector<double> random_start(const Compiled& sys, std::mt19937_64& rng) {
  const int n = sys.n;
  std::vector<double> interior(n - 2);
  for (double& v : interior) v = uniform01(rng);
  std::sort(interior.begin(), interior.end());
  std::vector<double> x(interior);
  const double lo = std::log(1e-2);
  const double hi = std::log(1e2);
  for (int i = 0; i < n; ++i) x.push_back(lo + (hi - lo) * uniform01(rng));
  return x;
}

// Gradient descent with Armijo backtracking and step growth after success.
std::vector<double> descend(const Objective& obj, std::vector<double> x, int iterations) {
  std::vector<double> g, trial(x.size()), g_trial;
  double f = obj(x, &g);
  double step = 1e-2;
  for (int it = 0; it < iterations && f > 0.0; ++it) {
    double gg = 0.0;
    for (double v : g) gg += v * v;
    if (gg == 0.0) break;
    bool accepted = false;
    while (step > 1e-300) {
      for (std::size_t k = 0; k < x.size(); ++k) trial[k] = x[k] - step * g[k];
      obj.clamp(trial);
      const double ft = obj(trial, &g_trial);
      if (std::isfinite(ft) && ft <= f - 1e-4 * step * gg) {
        x.swap(trial);
        g.swap(g_trial);
        f = ft;
        accepted = true;
        step *= 2.0;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return x;
}

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::Induced: return "induced";
    case SystemKind::Symmetric: return "symmetric";
    case SystemKind::SingleChainTop: return "single-chain";
    case SystemKind::Custom: return "custom";
  }
  return "custom";
}

SystemKind parse_system_kind(std::string_view name) {
  if (name == "induced") return SystemKind::Induced;
  if (name == "symmetric") return SystemKind::Symmetric;
  if (name == "single-chain" || name == "single_chain_top") return SystemKind::SingleChainTop;
  if (name == "custom") return SystemKind::Custom;
  throw Error(Errc::UnknownKind, "unknown constraint system '" + std::string(name) + "'");
}

int ConstraintSystem::position(int label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw Error(Errc::DimensionMismatch, "label " + std::to_string(label) + " not in system");
  }
  return static_cast<int>(it - labels.begin());
}

ConstraintSystem custom_system(std::vector<int> labels, std::vector<LabelPair> touching) {
  if (labels.size() < 2) throw Error(Errc::DimensionMismatch, "a system needs at least two circles");
  ConstraintSystem sys;
  sys.kind = SystemKind::Custom;
  for (int label : labels) sys.sides.push_back(chains::octuple_side(label));
  for (std::size_t i = 1; i < labels.size(); ++i) sys.ordering.emplace_back(labels[i - 1], labels[i]);
  sys.disjoint = same_side_complement(labels, touching);
  sys.labels = std::move(labels);
  sys.equalities = std::move(touching);
  for (auto [a, b] : sys.equalities) {
    sys.position(a);
    sys.position(b);
  }
  return sys;
}

ConstraintSystem build_constraint_system(SystemKind kind) {
  const auto to_vec = [](const auto& arr) { return std::vector<LabelPair>(arr.begin(), arr.end()); };
  ConstraintSystem sys;
  switch (kind) {
    case SystemKind::Induced:
      sys = custom_system({1, 2, 3, 4, 5, 6, 7, 8}, to_vec(chains::induced_pairs()));
      break;
    case SystemKind::Symmetric: {
      auto pairs = to_vec(chains::induced_pairs());
      for (auto p : chains::symmetric_extra_pairs()) pairs.push_back(p);
      sys = custom_system({1, 2, 3, 4, 5, 6, 7, 8}, std::move(pairs));
      break;
    }
    case SystemKind::SingleChainTop:
      sys = custom_system({2, 3, 6, 7}, {{2, 3}, {3, 6}, {6, 7}, {2, 7}});
      break;
    case SystemKind::Custom:
      throw Error(Errc::UnknownKind, "custom systems are built with custom_system()");
  }
  sys.kind = kind;
  return sys;
}

std::vector<double> residuals(const ConstraintSystem& sys, const Assignment& a) {
  const std::size_t n = sys.labels.size();
  if (a.t.size() != n || a.r.size() != n) {
    throw Error(Errc::DimensionMismatch, "assignment size does not match the system");
  }
  for (double r : a.r) {
    if (!(r > 0.0)) throw Error(Errc::NonpositiveRadius, "assignment radii must be positive");
  }
  double span = a.t.back() - a.t.front();
  if (!(std::abs(span) > 0.0)) span = 1.0;
  span = std::abs(span);
  const double span2 = span * span;

  std::vector<double> out;
  out.reserve(sys.term_count());
  for (auto [la, lb] : sys.equalities) {
    const int i = sys.position(la);
    const int j = sys.position(lb);
    const double dt = a.t[j] - a.t[i];
    out.push_back((dt * dt - 4.0 * a.r[i] * a.r[j]) / span2);
  }
  for (auto [la, lb] : sys.ordering) {
    const int i = sys.position(la);
    const int j = sys.position(lb);
    out.push_back(std::max(0.0, sys.margin * span - (a.t[j] - a.t[i])) / span);
  }
  for (auto [la, lb] : sys.disjoint) {
    const int i = sys.position(la);
    const int j = sys.position(lb);
    const double dt = a.t[j] - a.t[i];
    out.push_back(std::max(0.0, 4.0 * a.r[i] * a.r[j] - dt * dt) / span2);
  }
  return out;
}

double residual_norm(const ConstraintSystem& sys, const Assignment& a) {
  double sum = 0.0;
  for (double v : residuals(sys, a)) sum += v * v;
  return std::sqrt(sum);
}

SolveResult solve_feasibility(const ConstraintSystem& sys, std::uint64_t seed, int restarts,
                              int iterations, const SolveOptions& options) {
  if (restarts < 1 || iterations < 1) {
    throw Error(Errc::PreconditionFailed, "restarts and iterations must be at least 1");
  }
  const Compiled compiled = compile(sys);
  const Objective objective{compiled};

  SolveResult result;
  result.seed = seed;
  result.restarts_used = restarts;
  result.runs.resize(restarts);

  auto run_one = [&](int index) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1)));
    std::vector<double> x = random_start(compiled, rng);
    if (compiled.eq.size() + compiled.ord.size() + compiled.dis.size() > 0) {
      x = descend(objective, std::move(x), iterations);
    }
    RunResult& run = result.runs[index];
    objective.decode(x, run.assignment.t, run.assignment.r);
    run.residual = residual_norm(sys, run.assignment);
  };

  const int threads = std::clamp(options.threads, 1, restarts);
  if (threads == 1) {
    for (int i = 0; i < restarts; ++i) run_one(i);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (int i = w; i < restarts; i += threads) run_one(i);
      });
    }
  }

  // Minimum residual; ties go to the lower restart index.
  int best = 0;
  for (int i = 1; i < restarts; ++i) {
    if (result.runs[i].residual < result.runs[best].residual) best = i;
  }
  result.best_restart = best;
  result.best = result.runs[best].assignment;
  result.residual = result.runs[best].residual;
  return result;
}

chains::OctupleConfig to_octuple(const ConstraintSystem& sys, const Assignment& a) {
  if (sys.labels.size() != 8 || a.t.size() != 8 || a.r.size() != 8) {
    throw Error(Errc::DimensionMismatch, "octuple view needs eight circles");
  }
  chains::OctupleConfig cfg;
  cfg.kind = sys.kind == SystemKind::Symmetric ? chains::OctupleKind::Symmetric
                                                : chains::OctupleKind::Induced;
  for (int i = 0; i < 8; ++i) {
    const int label = sys.labels[i];
    cfg[label] = {a.t[i], a.r[i], chains::octuple_side(label)};
  }
  return cfg;
}

Assignment from_octuple(const ConstraintSystem& sys, const chains::OctupleConfig& cfg) {
  Assignment a;
  for (int label : sys.labels) {
    if (label < 1 || label > 8) throw Error(Errc::DimensionMismatch, "labels must be 1..8");
    a.t.push_back(cfg[label].t);
    a.r.push_back(cfg[label].r);
  }
  return a;
}

}  // namespace crep::solver
