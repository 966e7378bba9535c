#pragma once

// Sphere decomposition about a root set, weak spherical symmetry, and the
// averaging operator.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wss/error.hpp"
#include "wss/graph.hpp"

namespace wss {

/// Spheres S_0..S_R about a root set O of a finite connected graph, with the
/// per-vertex inner/outer/sphere degrees and per-radius aggregates.
struct SphereDecomposition {
  std::vector<Vertex> roots;
  std::vector<std::vector<Vertex>> spheres;
  std::vector<int> radius_of;

  // Per vertex.
  std::vector<double> kappa_plus;
  std::vector<double> kappa_minus;
  std::vector<double> kappa_zero;
  std::vector<double> q;

  // Per radius r = 0..R; boundary[R] is 0 for a finite graph.
  std::vector<double> boundary;
  std::vector<double> sphere_measure;
  std::vector<double> sphere_killing;

  int max_radius() const noexcept { return static_cast<int>(spheres.size()) - 1; }
};

/// BFS layering about `roots`; throws ArgumentError on an empty or invalid root
/// set and StructureError when some vertex is unreachable.
inline SphereDecomposition sphere_decomposition(const WeightedGraph& g,
                                                std::span<const Vertex> roots) {
  if (roots.empty()) throw ArgumentError("root set must be nonempty");
  const std::size_t n = g.vertex_count();
  SphereDecomposition dec;
  dec.radius_of.assign(n, -1);
  std::vector<Vertex> frontier;
  for (Vertex o : roots) {
    g.check_vertex(o);
    if (dec.radius_of[o] < 0) {
      dec.radius_of[o] = 0;
      frontier.push_back(o);
      dec.roots.push_back(o);
    }
  }
  std::sort(dec.roots.begin(), dec.roots.end());
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end());
    dec.spheres.push_back(frontier);
    const int r = static_cast<int>(dec.spheres.size());
    std::vector<Vertex> next;
    for (Vertex x : frontier) {
      for (const auto& nb : g.neighbors(x)) {
        if (dec.radius_of[nb.vertex] < 0) {
          dec.radius_of[nb.vertex] = r;
          next.push_back(nb.vertex);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Vertex> unreachable;
  for (Vertex x = 0; x < n; ++x) {
    if (dec.radius_of[x] < 0) unreachable.push_back(x);
  }
  if (!unreachable.empty()) {
    std::string list;
    for (std::size_t i = 0; i < unreachable.size() && i < 20; ++i) {
      list += (i ? "," : "") + std::to_string(unreachable[i]);
    }
    if (unreachable.size() > 20) list += ",...";
    throw StructureError("graph is not connected; unreachable from the root set: " + list);
  }

  dec.kappa_plus.assign(n, 0.0);
  dec.kappa_minus.assign(n, 0.0);
  dec.kappa_zero.assign(n, 0.0);
  dec.q.assign(n, 0.0);
  const std::size_t spheres = dec.spheres.size();
  dec.boundary.assign(spheres, 0.0);
  dec.sphere_measure.assign(spheres, 0.0);
  dec.sphere_killing.assign(spheres, 0.0);
  for (Vertex x = 0; x < n; ++x) {
    const int r = dec.radius_of[x];
    for (const auto& nb : g.neighbors(x)) {
      const int s = dec.radius_of[nb.vertex];
      if (s == r + 1) {
        dec.kappa_plus[x] += nb.weight;
        dec.boundary[static_cast<std::size_t>(r)] += nb.weight;
      } else if (s == r - 1) {
        dec.kappa_minus[x] += nb.weight;
      } else {
        dec.kappa_zero[x] += nb.weight;
      }
    }
    const double m = g.measure(x);
    dec.kappa_plus[x] /= m;
    dec.kappa_minus[x] /= m;
    dec.kappa_zero[x] /= m;
    dec.q[x] = g.killing(x) / m;
    dec.sphere_measure[static_cast<std::size_t>(r)] += m;
    dec.sphere_killing[static_cast<std::size_t>(r)] += g.killing(x);
  }
  return dec;
}

inline SphereDecomposition sphere_decomposition(const WeightedGraph& g,
                                                std::initializer_list<Vertex> roots) {
  return sphere_decomposition(g, std::span<const Vertex>(roots.begin(), roots.size()));
}

/// Two per-sphere values count as equal when |a - b| <= 1e-9 max(1, |a|, |b|).
inline bool sphere_values_equal(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

struct SymmetryWitness {
  int radius = 0;
  Vertex x = 0;
  Vertex y = 0;
  std::string quantity;  // "kappa_plus", "kappa_minus" or "q"
  double value_x = 0.0;
  double value_y = 0.0;
};

struct SymmetryVerdict {
  bool symmetric = true;
  std::optional<SymmetryWitness> witness;
  explicit operator bool() const noexcept { return symmetric; }
};

/// Checks that kappa_plus, kappa_minus and q are constant on every sphere with
/// radius <= `through_radius` (all spheres when negative). kappa_zero is not
/// constrained. Returns the first offending pair otherwise.
inline SymmetryVerdict check_weak_spherical_symmetry(const SphereDecomposition& dec,
                                                     int through_radius = -1) {
  const int last = through_radius < 0 ? dec.max_radius()
                                      : std::min(through_radius, dec.max_radius());
  struct Field {
    const char* name;
    const std::vector<double>* values;
  };
  const Field fields[] = {{"kappa_plus", &dec.kappa_plus},
                          {"kappa_minus", &dec.kappa_minus},
                          {"q", &dec.q}};
  for (int r = 0; r <= last; ++r) {
    const auto& sphere = dec.spheres[static_cast<std::size_t>(r)];
    const Vertex x = sphere.front();
    for (std::size_t i = 1; i < sphere.size(); ++i) {
      const Vertex y = sphere[i];
      for (const auto& f : fields) {
        const double a = (*f.values)[x], b = (*f.values)[y];
        if (!sphere_values_equal(a, b)) {
          return {false, SymmetryWitness{r, x, y, f.name, a, b}};
        }
      }
    }
  }
  return {};
}

inline SymmetryVerdict is_weakly_spherically_symmetric(const WeightedGraph& g,
                                                       std::span<const Vertex> roots) {
  return check_weak_spherical_symmetry(sphere_decomposition(g, roots));
}

/// Sphere-wise measure-weighted means (A f)(r).
inline std::vector<double> sphere_averages(const WeightedGraph& g, const SphereDecomposition& dec,
                                           const VertexFunction& f) {
  detail::check_size(g, f, "function");
  std::vector<double> avg(dec.spheres.size(), 0.0);
  for (std::size_t r = 0; r < dec.spheres.size(); ++r) {
    double s = 0.0;
    for (Vertex y : dec.spheres[r]) s += f[y] * g.measure(y);
    avg[r] = s / dec.sphere_measure[r];
  }
  return avg;
}

/// Extends a radial function f(0..R) to the vertex set.
inline VertexFunction lift_radial(const SphereDecomposition& dec, std::span<const double> radial) {
  if (radial.size() < dec.spheres.size()) {
    throw ArgumentError("radial function shorter than the number of spheres");
  }
  VertexFunction f(dec.radius_of.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    f[x] = radial[static_cast<std::size_t>(dec.radius_of[x])];
  }
  return f;
}

/// Averaging operator A with respect to the root set of `dec`.
inline VertexFunction average(const WeightedGraph& g, const SphereDecomposition& dec,
                              const VertexFunction& f) {
  return lift_radial(dec, sphere_averages(g, dec, f));
}

/// max_x |Delta(A f)(x) - A(Delta f)(x)|.
inline double commutation_residual(const WeightedGraph& g, const SphereDecomposition& dec,
                                   const VertexFunction& f) {
  const VertexFunction lhs = laplacian(g, average(g, dec, f));
  const VertexFunction rhs = average(g, dec, laplacian(g, f));
  double worst = 0.0;
  for (std::size_t x = 0; x < lhs.size(); ++x) worst = std::max(worst, std::abs(lhs[x] - rhs[x]));
  return worst;
}

/// Laplacian of a spherically symmetric function through the radial formula
/// [dB(r)(f(r) - f(r+1)) + dB(r-1)(f(r) - f(r-1)) + c(S_r) f(r)] / m(S_r).
inline double radial_laplacian(const SphereDecomposition& dec, std::span<const double> f, int r) {
  const auto ur = static_cast<std::size_t>(r);
  if (r < 0 || r > dec.max_radius() || f.size() < dec.spheres.size()) {
    throw ArgumentError("radial_laplacian: radius or function length out of range");
  }
  double s = dec.sphere_killing[ur] * f[ur];
  if (r < dec.max_radius()) s += dec.boundary[ur] * (f[ur] - f[ur + 1]);
  if (r > 0) s += dec.boundary[ur - 1] * (f[ur] - f[ur - 1]);
  return s / dec.sphere_measure[ur];
}

}  // namespace wss
