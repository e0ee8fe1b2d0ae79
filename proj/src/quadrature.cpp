#include "photon/quadrature.hpp"

#include "photon/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace photon::quad {

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    rule.x[i] = t;
    rule.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return rule;
}

constexpr int leaf_order = 10;
constexpr int max_depth = 60;

struct PanelIntegrator {
  const std::function<cd(double)>& kernel;
  const std::vector<double>& singular;
  const double* nodes;
  std::vector<double> bary;
  std::vector<cd>& out;
  double min_len;

  double distance(double lo, double hi) const {
    double d = INFINITY;
    for (double s : singular) {
      const double ds = s < lo ? lo - s : (s > hi ? s - hi : 0.0);
      d = std::min(d, ds);
    }
    return d;
  }

  void leaf(double lo, double hi) {
    const auto& g = gauss_legendre(leaf_order);
    const double half = 0.5 * (hi - lo);
    const int p = static_cast<int>(bary.size());
    for (int m = 0; m < leaf_order; ++m) {
      const double y = lo + half * (g.x[m] + 1.0);
      const cd kv = kernel(y);
      // a node can round onto the singular point in the last, tiny piece
      if (!std::isfinite(kv.real()) || !std::isfinite(kv.imag())) continue;
      const cd ky = half * g.w[m] * kv;
      double denom = 0.0;
      int exact = -1;
      for (int j = 0; j < p; ++j) {
        if (y == nodes[j]) {
          exact = j;
          break;
        }
        denom += bary[j] / (y - nodes[j]);
      }
      if (exact >= 0) {
        out[exact] += ky;
        continue;
      }
      for (int j = 0; j < p; ++j) out[j] += ky * (bary[j] / (y - nodes[j]) / denom);
    }
  }

  void integrate(double lo, double hi, int depth) {
    const double len = hi - lo;
    if (len <= min_len || depth >= max_depth || distance(lo, hi) >= len) {
      leaf(lo, hi);
      return;
    }
    const double mid = 0.5 * (lo + hi);
    integrate(lo, mid, depth + 1);
    integrate(mid, hi, depth + 1);
  }
};

} // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(compute_gauss_legendre(n));
  return *slot;
}

PanelGrid make_grid(const std::vector<double>& breaks, int order) {
  if (breaks.size() < 2) throw DomainError("make_grid: need at least one panel");
  const auto& g = gauss_legendre(order);
  PanelGrid grid;
  grid.order = order;
  grid.breaks = breaks;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    if (!(b > a)) throw DomainError("make_grid: breaks must be increasing");
    for (int i = 0; i < order; ++i) {
      grid.nodes.push_back(a + 0.5 * (b - a) * (g.x[i] + 1.0));
      grid.weights.push_back(0.5 * (b - a) * g.w[i]);
    }
  }
  return grid;
}

std::vector<double> graded_breaks(double a, double b, int panels, double ratio, bool refine_left,
                                  bool refine_right) {
  if (panels < 1) throw DomainError("graded_breaks: need at least one panel");
  if (refine_left && refine_right) {
    if (panels % 2 != 0) throw DomainError("graded_breaks: two-sided grading needs an even panel count");
    const double mid = 0.5 * (a + b);
    auto left = graded_breaks(a, mid, panels / 2, ratio, true, false);
    const auto right = graded_breaks(mid, b, panels / 2, ratio, false, true);
    left.insert(left.end(), right.begin() + 1, right.end());
    return left;
  }
  std::vector<double> lengths(panels);
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    lengths[p] = std::pow(ratio, p);
    total += lengths[p];
  }
  if (refine_right) {
    // largest panel first
  } else if (refine_left) {
    std::reverse(lengths.begin(), lengths.end());
  } else {
    std::fill(lengths.begin(), lengths.end(), 1.0);
    total = panels;
  }
  std::vector<double> breaks{a};
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    acc += lengths[p];
    breaks.push_back(p + 1 == panels ? b : a + (b - a) * acc / total);
  }
  return breaks;
}

PanelGrid radial_grid(int n, int order, double ratio) {
  if (n < 8 || n % order != 0) throw DomainError("radial_grid: node count must be >= 8 and a multiple of the panel order");
  return make_grid(graded_breaks(0.0, 1.0, n / order, ratio, false, true), order);
}

std::vector<cd> product_weights(const PanelGrid& grid, const std::function<cd(double)>& kernel,
                                const std::vector<double>& singular_points) {
  const int n = grid.size();
  const int p = grid.order;
  std::vector<cd> q(n, 0.0);
  std::vector<double> bary(p);
  for (int panel = 0; panel < grid.panels(); ++panel) {
    const double a = grid.breaks[panel], b = grid.breaks[panel + 1];
    const double len = b - a;
    double dist = INFINITY;
    for (double s : singular_points) dist = std::min(dist, s < a ? a - s : (s > b ? s - b : 0.0));
    const int first = panel * p;
    if (dist >= len) {
      for (int j = first; j < first + p; ++j) q[j] = grid.weights[j] * kernel(grid.nodes[j]);
      continue;
    }
    const double* nodes = grid.nodes.data() + first;
    for (int j = 0; j < p; ++j) {
      double prod = 1.0;
      for (int m = 0; m < p; ++m) {
        if (m != j) prod *= (nodes[j] - nodes[m]) / len;
      }
      bary[j] = 1.0 / prod;
    }
    std::vector<cd> local(p, 0.0);
    PanelIntegrator integ{kernel, singular_points, nodes, bary, local, 1e-15 * len};
    // split at interior singular points so every piece has them at its ends
    std::vector<double> cuts{a};
    for (double s : singular_points) {
      if (s > a && s < b) cuts.push_back(s);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      if (cuts[c + 1] > cuts[c]) integ.integrate(cuts[c], cuts[c + 1], 0);
    }
    for (int j = 0; j < p; ++j) q[first + j] = local[j];
  }
  return q;
}

} // namespace photon::quad
