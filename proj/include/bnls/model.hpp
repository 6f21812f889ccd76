#pragma once

// Coupled power-type nonlinearities (F, f_1..f_l) for the focusing
// biharmonic Schrodinger system
//
//     i a_k du_k/dt + g_k Lap^2 u_k - f_k(u) = 0,   k = 1..l,  5 <= d <= 16,
//
// at the energy-critical degree: F is homogeneous of degree 2d/(d-4) and
// f_k = dF/dzbar_k + conj(dF/dz_k).  Models are supplied as black-box
// evaluators plus the gauge exponents sigma_k; everything a solver needs to
// know about a nonlinearity lives here.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bnls {

using Cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

struct CriticalExponents {
  double p_crit;  // 8/(d-4), growth power of the forcing differences
  double deg;     // 2d/(d-4), homogeneity degree of F
  double s_exp;   // 2(d+4)/(d-4), scattering-size power
};

inline CriticalExponents critical_exponents(int d) {
  if (d < 5 || d > 16)
    throw std::domain_error("critical_exponents: dimension must be in [5,16], got " +
                            std::to_string(d));
  const double dm4 = static_cast<double>(d) - 4.0;
  return {8.0 / dm4, 2.0 * d / dm4, 2.0 * (d + 4.0) / dm4};
}

struct ModelParams {
  int d = 0;
  int l = 0;
  RVec alpha;  // a_k > 0
  RVec gamma;  // g_k > 0
  double p_crit = 0.0;
  double deg = 0.0;
  double s_exp = 0.0;

  static ModelParams create(int d, int l, RVec alpha, RVec gamma) {
    const auto ex = critical_exponents(d);
    if (l < 1) throw std::domain_error("ModelParams: component count must be >= 1");
    if (alpha.size() != l || gamma.size() != l)
      throw std::domain_error("ModelParams: alpha/gamma must have l entries");
    if ((alpha.array() <= 0.0).any() || (gamma.array() <= 0.0).any())
      throw std::domain_error("ModelParams: alpha_k and gamma_k must be positive");
    ModelParams p;
    p.d = d;
    p.l = l;
    p.alpha = std::move(alpha);
    p.gamma = std::move(gamma);
    p.p_crit = ex.p_crit;
    p.deg = ex.deg;
    p.s_exp = ex.s_exp;
    return p;
  }
};

// Serializable recipe for rebuilding a model (checkpoints, configs).
struct ModelSpec {
  std::string name;
  int d = 0;
  int l = 1;
  std::vector<double> alpha;
  std::vector<double> gamma;
  double beta = 0.0;          // coupling constant, two-component model only
  std::vector<double> sigma;  // optional override of the gauge exponents
};

namespace detail {

inline void require_finite(const CVec& z, const char* who) {
  for (Eigen::Index i = 0; i < z.size(); ++i)
    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag()))
      throw std::domain_error(std::string(who) + ": non-finite input component");
}

}  // namespace detail

// Potential F: C^l -> C and forcing f = (f_1..f_l): C^l -> C^l.
// Evaluators must be pure; instances are safe to share across threads.
class NonlinearityModel {
 public:
  using PotentialFn = std::function<Cplx(const CVec&)>;
  using ForcingFn = std::function<CVec(const CVec&)>;

  NonlinearityModel(ModelParams params, PotentialFn F, ForcingFn f, RVec sigma,
                    bool modulus_preserving, ModelSpec spec)
      : params_(std::move(params)),
        F_(std::move(F)),
        f_(std::move(f)),
        sigma_(std::move(sigma)),
        modulus_preserving_(modulus_preserving),
        spec_(std::move(spec)) {
    if (sigma_.size() != params_.l)
      throw std::domain_error("NonlinearityModel: sigma must have l entries");
  }

  const ModelParams& params() const { return params_; }
  const RVec& sigma() const { return sigma_; }
  bool modulus_preserving() const { return modulus_preserving_; }
  const ModelSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }

  Cplx eval_F(const CVec& z) const {
    detail::require_finite(z, "eval_F");
    return F_(z);
  }

  CVec eval_f(const CVec& z) const {
    detail::require_finite(z, "eval_f");
    return f_(z);
  }

  // Raw evaluators, no finite-input guard.  Used in per-node inner loops.
  Cplx F_raw(const CVec& z) const { return F_(z); }
  CVec f_raw(const CVec& z) const { return f_(z); }

 private:
  ModelParams params_;
  PotentialFn F_;
  ForcingFn f_;
  RVec sigma_;
  bool modulus_preserving_;
  ModelSpec spec_;
};

// Central-difference Wirtinger derivatives of a scalar map G: C^l -> C at z,
// in the m-th variable:
//   d/dz    = (d/dx - i d/dy)/2,     d/dzbar = (d/dx + i d/dy)/2.
// O(h^2) truncation.
inline std::pair<Cplx, Cplx> wirtinger_fd(const std::function<Cplx(const CVec&)>& G,
                                          const CVec& z, int m, double h) {
  if (!(h > 0.0)) throw std::domain_error("wirtinger_fd: step must be positive");
  if (m < 0 || m >= z.size()) throw std::domain_error("wirtinger_fd: index out of range");
  CVec zp = z, zm = z;
  zp[m] += Cplx(h, 0.0);
  zm[m] -= Cplx(h, 0.0);
  const Cplx Gx = (G(zp) - G(zm)) / (2.0 * h);
  zp = z;
  zm = z;
  zp[m] += Cplx(0.0, h);
  zm[m] -= Cplx(0.0, h);
  const Cplx Gy = (G(zp) - G(zm)) / (2.0 * h);
  const Cplx i(0.0, 1.0);
  return {0.5 * (Gx - i * Gy), 0.5 * (Gx + i * Gy)};
}

// Default step for Wirtinger differencing: balances truncation and rounding
// for quartic-scale potentials in double precision.
inline double wirtinger_step(const CVec& z) { return 1e-5 * (1.0 + z.norm()); }

inline RVec default_sigma(const ModelParams& p) {
  return (p.alpha.array() / p.gamma.array()).matrix();
}

namespace detail {

inline RVec sigma_from_spec(const ModelParams& p, const ModelSpec& s) {
  if (s.sigma.empty()) return default_sigma(p);
  if (static_cast<int>(s.sigma.size()) != p.l)
    throw std::domain_error("model: sigma override must have l entries");
  return Eigen::Map<const RVec>(s.sigma.data(), p.l);
}

inline ModelParams params_from_spec(const ModelSpec& s) {
  if (static_cast<int>(s.alpha.size()) != s.l || static_cast<int>(s.gamma.size()) != s.l)
    throw std::domain_error("model: alpha/gamma must have l entries");
  return ModelParams::create(s.d, s.l,
                             Eigen::Map<const RVec>(s.alpha.data(), s.l),
                             Eigen::Map<const RVec>(s.gamma.data(), s.l));
}

}  // namespace detail

// Decoupled critical-power model, valid for every admissible d:
//   F(z) = (d-4)/(2d) * sum_k |z_k|^(2d/(d-4)),   f_k(z) = |z_k|^(8/(d-4)) z_k.
inline std::shared_ptr<NonlinearityModel> make_decoupled_model(ModelSpec spec) {
  spec.name = "decoupled";
  auto params = detail::params_from_spec(spec);
  const double deg = params.deg;
  const double p = params.p_crit;
  const double coef = (params.d - 4.0) / (2.0 * params.d);
  auto F = [deg, coef](const CVec& z) -> Cplx {
    double s = 0.0;
    for (Eigen::Index k = 0; k < z.size(); ++k) s += std::pow(std::abs(z[k]), deg);
    return Cplx(coef * s, 0.0);
  };
  auto f = [p](const CVec& z) -> CVec {
    CVec out(z.size());
    for (Eigen::Index k = 0; k < z.size(); ++k) out[k] = std::pow(std::abs(z[k]), p) * z[k];
    return out;
  };
  auto sigma = detail::sigma_from_spec(params, spec);
  return std::make_shared<NonlinearityModel>(std::move(params), std::move(F), std::move(f),
                                             std::move(sigma), true, std::move(spec));
}

// Symmetric two-component coupling; the degree is the integer 4, so this
// model exists only at d = 8:
//   F(z) = (|z1|^4 + |z2|^4)/4 + (beta/2) |z1|^2 |z2|^2,
//   f_1(z) = (|z1|^2 + beta |z2|^2) z1,   f_2 symmetric,   beta >= 0.
inline std::shared_ptr<NonlinearityModel> make_coupled_model(ModelSpec spec) {
  spec.name = "coupled_beta";
  if (spec.d != 8) throw std::domain_error("coupled_beta model requires d = 8");
  if (spec.l != 2) throw std::domain_error("coupled_beta model requires l = 2");
  if (spec.beta < 0.0) throw std::domain_error("coupled_beta model requires beta >= 0");
  auto params = detail::params_from_spec(spec);
  const double beta = spec.beta;
  auto F = [beta](const CVec& z) -> Cplx {
    const double a = std::norm(z[0]), b = std::norm(z[1]);
    return Cplx(0.25 * (a * a + b * b) + 0.5 * beta * a * b, 0.0);
  };
  auto f = [beta](const CVec& z) -> CVec {
    const double a = std::norm(z[0]), b = std::norm(z[1]);
    CVec out(2);
    out[0] = (a + beta * b) * z[0];
    out[1] = (b + beta * a) * z[1];
    return out;
  };
  auto sigma = detail::sigma_from_spec(params, spec);
  return std::make_shared<NonlinearityModel>(std::move(params), std::move(F), std::move(f),
                                             std::move(sigma), true, std::move(spec));
}

// Free flow: F = 0, f = 0.  Used to exercise the pure linear propagator.
inline std::shared_ptr<NonlinearityModel> make_linear_model(ModelSpec spec) {
  spec.name = "linear";
  auto params = detail::params_from_spec(spec);
  const int l = params.l;
  auto F = [](const CVec&) -> Cplx { return Cplx(0.0, 0.0); };
  auto f = [l](const CVec&) -> CVec { return CVec::Zero(l); };
  auto sigma = detail::sigma_from_spec(params, spec);
  return std::make_shared<NonlinearityModel>(std::move(params), std::move(F), std::move(f),
                                             std::move(sigma), true, std::move(spec));
}

// Validation fixture with the wrong homogeneity degree (3 instead of
// 2d/(d-4)): F = sum |z_k|^3, f_k = 3|z_k| z_k.  The pairing with H3 is
// intact, so only the degree-sensitive checks should trip.
inline std::shared_ptr<NonlinearityModel> make_cubic_modulus_model(ModelSpec spec) {
  spec.name = "cubic_modulus";
  auto params = detail::params_from_spec(spec);
  auto F = [](const CVec& z) -> Cplx {
    double s = 0.0;
    for (Eigen::Index k = 0; k < z.size(); ++k) {
      const double a = std::abs(z[k]);
      s += a * a * a;
    }
    return Cplx(s, 0.0);
  };
  auto f = [](const CVec& z) -> CVec {
    CVec out(z.size());
    for (Eigen::Index k = 0; k < z.size(); ++k) out[k] = 3.0 * std::abs(z[k]) * z[k];
    return out;
  };
  auto sigma = detail::sigma_from_spec(params, spec);
  return std::make_shared<NonlinearityModel>(std::move(params), std::move(F), std::move(f),
                                             std::move(sigma), true, std::move(spec));
}

// Genuinely phase-coupled potential at d = 8 (not modulus-preserving):
//   F(z) = Re(z1^2 zbar2^2),  f_1 = 2 zbar1 z2^2,  f_2 = 2 zbar2 z1^2.
// Exercises the generic (non phase-rotation) nonlinear substep and the
// hypothesis auditor on a model whose f_k is not of the form g_k(|z|) z_k.
inline std::shared_ptr<NonlinearityModel> make_phase_coupled_model(ModelSpec spec) {
  spec.name = "phase_coupled";
  if (spec.d != 8) throw std::domain_error("phase_coupled model requires d = 8");
  if (spec.l != 2) throw std::domain_error("phase_coupled model requires l = 2");
  auto params = detail::params_from_spec(spec);
  auto F = [](const CVec& z) -> Cplx {
    const Cplx w = z[0] * z[0] * std::conj(z[1]) * std::conj(z[1]);
    return Cplx(w.real(), 0.0);
  };
  auto f = [](const CVec& z) -> CVec {
    CVec out(2);
    out[0] = 2.0 * std::conj(z[0]) * z[1] * z[1];
    out[1] = 2.0 * std::conj(z[1]) * z[0] * z[0];
    return out;
  };
  // Re F is invariant under equal phase rotations of both components only,
  // so the defaults a_k/g_k are kept valid by requiring equal ratios.
  auto sigma = detail::sigma_from_spec(params, spec);
  if (std::abs(sigma[0] - sigma[1]) > 0.0)
    throw std::domain_error("phase_coupled model needs equal alpha_k/gamma_k ratios");
  return std::make_shared<NonlinearityModel>(std::move(params), std::move(F), std::move(f),
                                             std::move(sigma), false, std::move(spec));
}

// Name-based registry used by configs and checkpoints.
inline std::shared_ptr<NonlinearityModel> make_model(const ModelSpec& spec) {
  if (spec.name == "decoupled") return make_decoupled_model(spec);
  if (spec.name == "coupled_beta") return make_coupled_model(spec);
  if (spec.name == "linear") return make_linear_model(spec);
  if (spec.name == "phase_coupled") return make_phase_coupled_model(spec);
  throw std::domain_error("unknown model name '" + spec.name + "'");
}

}  // namespace bnls
