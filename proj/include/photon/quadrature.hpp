#pragma once

// Composite Gauss-Legendre panels and product-integration weights for
// kernels with isolated (integrable) singularities.

#include <complex>
#include <functional>
#include <vector>

namespace photon::quad {

using cd = std::complex<double>;

struct GaussRule {
  std::vector<double> x;  // nodes on [-1, 1], ascending
  std::vector<double> w;
};

// Cached; safe to call from several threads.
const GaussRule& gauss_legendre(int n);

struct PanelGrid {
  int order = 0;                // nodes per panel
  std::vector<double> breaks;   // panel end points, ascending
  std::vector<double> nodes;
  std::vector<double> weights;  // plain Gauss-Legendre weights on [breaks.front(), breaks.back()]

  int size() const { return static_cast<int>(nodes.size()); }
  int panels() const { return static_cast<int>(breaks.size()) - 1; }
};

PanelGrid make_grid(const std::vector<double>& breaks, int order);

// Panel lengths shrink by `ratio` from panel to panel toward the end(s)
// being refined. ratio = 1 gives uniform panels.
std::vector<double> graded_breaks(double a, double b, int panels, double ratio, bool refine_left,
                                  bool refine_right);

// Grid on [0, 1] with n nodes (a multiple of order), refined toward 1.
PanelGrid radial_grid(int n, int order = 16, double ratio = 0.5);

// Weights q_j such that sum_j q_j f(y_j) approximates int k(y) f(y) dy over
// the grid for f smooth on every panel. Panels within one panel length of a
// singular point are integrated against the Lagrange basis with bisection
// toward the singular points; other panels use the plain rule.
std::vector<cd> product_weights(const PanelGrid& grid, const std::function<cd(double)>& kernel,
                                const std::vector<double>& singular_points);

} // namespace photon::quad
