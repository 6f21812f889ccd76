#pragma once

// Radial discretization of R^d for radial fields:
//
//   nodes    r_i = (i + 1/2) h,  h = r_max / n      (open grid, no node at 0)
//   weights  w_i ~ integral over the i-th shell of omega_{d-1} r^{d-1} dr
//
// so that  sum_i w_i g(r_i)  realizes  int_{R^d} g(|x|) dx.  The base weight
// is the exact shell measure, which makes constants integrate exactly and is
// the inner product in which the flux-form Laplacian is self-adjoint.  The
// last few weights carry a small moment-matching correction so monomials r^m
// up to the stated quadrature order also integrate exactly; fields that have
// decayed at the boundary never feel it.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bnls/model.hpp"  // Cplx, CVec, RVec

namespace bnls {

inline double sphere_surface(int d) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

inline double ball_volume(int d, double r) {
  return sphere_surface(d) * std::pow(r, d) / d;
}

struct RadialGrid {
  int d = 0;
  int n = 0;
  double r_max = 0.0;
  double h = 0.0;
  double sphere_area = 0.0;  // omega_{d-1}
  int quad_order = 0;        // r^m integrates exactly for m <= quad_order
  RVec nodes;
  RVec weights;
};

namespace detail {

// 16-point Gauss-Legendre on [-1,1]; exact through degree 31.
inline constexpr double kGLx[8] = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722739, 0.61787624440264375,
    0.75540440835500303, 0.86563120238783174, 0.94457502307323258, 0.98940093499164993};
inline constexpr double kGLw[8] = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254, 0.14959598881657673,
    0.12462897125553387, 0.09515851168249278, 0.06225352393864789, 0.02715245941175409};

template <typename F>
double gauss16(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), s = 0.5 * (b - a);
  double acc = 0.0;
  for (int q = 0; q < 8; ++q)
    acc += kGLw[q] * (f(c + s * kGLx[q]) + f(c - s * kGLx[q]));
  return acc * s;
}

}  // namespace detail

inline RadialGrid build_grid(int d, int n, double r_max) {
  critical_exponents(d);  // validates 5 <= d <= 16
  if (n < 16) throw std::domain_error("build_grid: need n >= 16");
  if (!(r_max > 0.0)) throw std::domain_error("build_grid: need r_max > 0");

  RadialGrid g;
  g.d = d;
  g.n = n;
  g.r_max = r_max;
  g.h = r_max / n;
  g.sphere_area = sphere_surface(d);
  g.nodes.resize(n);
  g.weights.resize(n);

  for (int i = 0; i < n; ++i) g.nodes[i] = (i + 0.5) * g.h;

  // Exact shell measures: w_i = omega int_{ih}^{(i+1)h} r^{d-1} dr.
  // Evaluated as a difference of d-th powers of the cell faces.
  for (int i = 0; i < n; ++i) {
    const double a = i * g.h, b = (i + 1) * g.h;
    g.weights[i] = g.sphere_area * (std::pow(b, d) - std::pow(a, d)) / d;
  }

  // Correct the last m weights so polynomials of degree <= m-1 integrate
  // exactly.  Degree 1 is the ceiling here: the midpoint-node/shell-average
  // mismatch for higher monomials is distributed over the whole domain, not
  // boundary-local, so no tail-sized correction can absorb it.  Work in the
  // local basis ((r - r_c)/h)^k, r_c = last node; fall back if a corrected
  // weight would go nonpositive.
  const double rc = g.nodes[n - 1];
  for (int m = 2; m >= 1; --m) {
    Eigen::VectorXd defect(m);
    for (int k = 0; k < m; ++k) {
      double exact = 0.0;
      for (int i = 0; i < n; ++i) {
        const double a = i * g.h, b = (i + 1) * g.h;
        exact += detail::gauss16(
            [&](double r) {
              return g.sphere_area * std::pow(r, d - 1) * std::pow((r - rc) / g.h, k);
            },
            a, b);
      }
      double approx = 0.0;
      for (int i = 0; i < n; ++i)
        approx += g.weights[i] * std::pow((g.nodes[i] - rc) / g.h, k);
      defect[k] = exact - approx;
    }
    Eigen::MatrixXd V(m, m);  // rows: moments, cols: corrected nodes
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j)
        V(k, j) = std::pow((g.nodes[n - m + j] - rc) / g.h, k);
    Eigen::VectorXd delta = V.fullPivLu().solve(defect);
    bool ok = true;
    for (int j = 0; j < m; ++j)
      if (g.weights[n - m + j] + delta[j] <= 0.0) ok = false;
    if (!ok) continue;
    for (int j = 0; j < m; ++j) g.weights[n - m + j] += delta[j];
    g.quad_order = m - 1;
    break;
  }
  return g;
}

inline void check_length(const RadialGrid& g, Eigen::Index len, const char* who) {
  if (len != g.n)
    throw std::domain_error(std::string(who) + ": sample vector length " +
                            std::to_string(len) + " != grid size " + std::to_string(g.n));
}

// sum_i w_i g(r_i); scalar type follows the sample type
template <typename Derived>
typename Derived::Scalar integrate(const RadialGrid& g,
                                   const Eigen::MatrixBase<Derived>& samples) {
  check_length(g, samples.size(), "integrate");
  using S = typename Derived::Scalar;
  S acc(0);
  for (int i = 0; i < g.n; ++i) acc += S(g.weights[i]) * samples[i];
  return acc;
}

// <f,g> = sum_i w_i f_i conj(g_i)
template <typename DA, typename DB>
auto weighted_dot(const RadialGrid& g, const Eigen::MatrixBase<DA>& a,
                  const Eigen::MatrixBase<DB>& b) {
  check_length(g, a.size(), "weighted_dot");
  check_length(g, b.size(), "weighted_dot");
  using S = decltype(typename DA::Scalar(0) * typename DB::Scalar(0));
  S acc(0);
  for (int i = 0; i < g.n; ++i) {
    if constexpr (Eigen::NumTraits<typename DB::Scalar>::IsComplex)
      acc += S(g.weights[i]) * a[i] * std::conj(b[i]);
    else
      acc += S(g.weights[i]) * a[i] * b[i];
  }
  return acc;
}

template <typename Derived>
double weighted_norm2(const RadialGrid& g, const Eigen::MatrixBase<Derived>& a) {
  check_length(g, a.size(), "weighted_norm2");
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) {
    if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex)
      acc += g.weights[i] * std::norm(a[i]);
    else
      acc += g.weights[i] * a[i] * a[i];
  }
  return acc;
}

template <typename Derived>
double weighted_norm(const RadialGrid& g, const Eigen::MatrixBase<Derived>& a) {
  return std::sqrt(weighted_norm2(g, a));
}

}  // namespace bnls
