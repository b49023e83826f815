#pragma once

// Fourier side: closed-form transforms of box-set indicators, the sampled
// orthogonal-packing check, the Fejér kernel and the witness functions g_N
// built from it. Binary64 throughout; every report carries its tolerances.

#include "tilingobs/setalg.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace tilingobs {

using Complex = std::complex<double>;

inline double to_double(const Rational& r) { return r.get_d(); }

/// ∫ 1_S(x) e^{-2πi<ξ,x>} dx as a sum over boxes of products of
/// (e^{-2πiξa} − e^{-2πiξb}) / (2πiξ), with value b − a at ξ = 0.
inline Complex ft_indicator(const BoxSet& s, const std::vector<double>& xi) {
  if (static_cast<int>(xi.size()) != s.dim()) throw InputError("frequency dimension mismatch");
  Complex total = 0;
  const BoxSet normalized = normalize(s);
  for (const auto& b : normalized.boxes()) {
    Complex prod = 1;
    for (int i = 0; i < s.dim(); ++i) {
      const double a = to_double(b.lo[i]), c = to_double(b.hi[i]);
      if (xi[i] == 0) {
        prod *= (c - a);
        continue;
      }
      // e^{-iπξ(a+c)} · sin(πξ(c−a)) / (πξ) avoids cancellation for small ξ
      const double half = std::numbers::pi * xi[i];
      const Complex phase = std::polar(1.0, -half * (a + c));
      prod *= phase * (std::sin(half * (c - a)) / half);
    }
    total += prod;
  }
  return total;
}

struct OrthogonalPackingReport {
  std::size_t samples = 0;
  double min_abs_ft = std::numeric_limits<double>::infinity();
  std::vector<double> witness;  // sample attaining the minimum
  bool heuristic_pass = false;  // min |ft| > tol; sampling cannot prove zero-freeness
  Rational measure_region;
  Rational inverse_measure_a;
  bool criterion_strict = false;  // m(D) > 1/m(A)
  std::string verdict;            // "NotSpectralNotTile (heuristic)" or "Inconclusive"
};

/// Samples Δ(D) on a uniform grid (endpoints excluded, the origin included)
/// and looks for near-zeros of the transform of 1_A.
inline OrthogonalPackingReport orthogonal_packing_check(const BoxSet& region, const BoxSet& a,
                                                        std::size_t samples, double tol) {
  require_same_dim(region, a);
  if (samples < 2) throw InputError("need at least 2 samples per axis");
  const BoxSet delta = essential_difference(region);
  const BoxSet na = normalize(a);
  OrthogonalPackingReport rep;
  rep.measure_region = measure(region);
  const Rational ma = na.raw_volume();
  if (!(ma > 0)) throw InputError("A must have positive measure");
  rep.inverse_measure_a = 1 / ma;
  rep.criterion_strict = rep.measure_region > rep.inverse_measure_a;
  if (delta.empty()) {
    rep.verdict = "Inconclusive";
    return rep;
  }
  auto consider = [&](const std::vector<double>& p) {
    ++rep.samples;
    double v = std::abs(ft_indicator(na, p));
    if (v < rep.min_abs_ft) {
      rep.min_abs_ft = v;
      rep.witness = p;
    }
  };
  for (const auto& b : delta.boxes()) {
    if (delta.dim() == 1) {
      const double lo = to_double(b.lo[0]), hi = to_double(b.hi[0]);
      for (std::size_t i = 1; i < samples; ++i)
        consider({lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples)});
    } else {
      const double x0 = to_double(b.lo[0]), x1 = to_double(b.hi[0]);
      const double y0 = to_double(b.lo[1]), y1 = to_double(b.hi[1]);
      for (std::size_t i = 1; i < samples; ++i)
        for (std::size_t j = 1; j < samples; ++j)
          consider({x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(samples),
                    y0 + (y1 - y0) * static_cast<double>(j) / static_cast<double>(samples)});
    }
  }
  consider(std::vector<double>(static_cast<std::size_t>(a.dim()), 0.0));
  rep.heuristic_pass = rep.min_abs_ft > tol;
  rep.verdict = rep.heuristic_pass && rep.criterion_strict ? "NotSpectralNotTile (heuristic)"
                                                           : "Inconclusive";
  return rep;
}

/// K_N(t) = Σ_{|n|<N} (1 − |n|/N) e^{2πint} = (1/N) (sin πNt / sin πt)^2.
inline double fejer(long n_terms, double t) {
  if (n_terms < 1) throw InputError("Fejér kernel needs N >= 1");
  const double nd = static_cast<double>(n_terms);
  const double frac = t - std::round(t);
  const double s = std::sin(std::numbers::pi * frac);
  if (s == 0.0) return nd;
  const double q = std::sin(std::numbers::pi * nd * frac) / s;
  return q * q / nd;
}

/// Coefficient of e^{2πint} in p_N(t) = K_N(R t).
inline double fejer_coefficient(long n_terms, long r, long n) {
  if (n % r != 0) return 0.0;
  const long j = std::labs(n / r);
  if (j >= n_terms) return 0.0;
  return 1.0 - static_cast<double>(j) / static_cast<double>(n_terms);
}

namespace detail {

/// Centred cubic B-spline (four-fold convolution of the unit box), support [−2, 2].
inline double cubic_bspline(double x) {
  const double a = std::abs(x);
  if (a >= 2.0) return 0.0;
  if (a >= 1.0) {
    const double u = 2.0 - a;
    return u * u * u / 6.0;
  }
  return (4.0 - 6.0 * a * a + 3.0 * a * a * a) / 6.0;
}

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace detail

struct WitnessParams {
  double delta = 1.0;
  std::vector<double> tau;      // τ_1..τ_k
  std::vector<Rational> v;      // nonzero, dimension d
  Rational eps;                 // φ supported in the ball of radius ε
  long R = 1;                   // J = {0 < |n| < R}
  long N = 1;                   // Fejér order
  Rational w;                   // ψ supported in |t_j| < w on the torus

  std::size_t dim() const { return v.size(); }
  double v_norm() const {
    double s = 0;
    for (const auto& x : v) s += to_double(x) * to_double(x);
    return std::sqrt(s);
  }

  void validate() const {
    if (v.empty() || v.size() > 2) throw InputError("v must have dimension 1 or 2");
    bool nonzero = false;
    for (const auto& x : v) nonzero = nonzero || x != 0;
    if (!nonzero) throw InputError("v must be nonzero");
    if (!(delta > 0)) throw InputError("delta must be positive");
    if (tau.empty()) throw InputError("tau must have at least one entry");
    if (!(eps > 0)) throw InputError("eps must be positive");
    if (!(to_double(eps) < 0.5 * v_norm())) throw InputError("invariant violated: eps must be < |v|/2");
    if (R < 1) throw InputError("R must be a positive integer");
    if (N < 1) throw InputError("N must be a positive integer");
    if (!(w > 0)) throw InputError("w must be positive");
    if (!(w < Rational(1, 2))) throw InputError("invariant violated: w must be < 1/2 on the torus");
    if (!(2 * std::numbers::pi * to_double(w) <= delta / 2))
      throw InputError("invariant violated: 2*pi*w must be <= delta/2");
  }
};

struct ActiveTerm {
  long n = 0;
  double coeff = 0;  // ψ(nτ) · p̂_N(n)
};

/// g_N(x) = Σ_n ψ(nτ) p̂_N(n) φ(x − n v), φ a cubic-spline bump with ∫φ = 1
/// and φ̂ = Π sinc⁴ ≥ 0, ψ the product of torus cubic-spline bumps with
/// ψ̂(m) = Π sinc⁴(π m_j w/2) ≥ 0 and ψ̂(0) = 1.
class WitnessFunction {
 public:
  explicit WitnessFunction(WitnessParams params) : p_(std::move(params)) {
    p_.validate();
    // per-axis half-width ε/√d keeps the support cube inside the ε-ball
    phi_scale_ = to_double(p_.eps) / (2.0 * std::sqrt(static_cast<double>(p_.dim())));
    psi_scale_ = to_double(p_.w) / 2.0;
    for (long j = -(p_.N - 1); j <= p_.N - 1; ++j) {
      const long n = j * p_.R;
      const double psi = psi_at_multiple(n);
      if (psi <= 0.0) continue;
      const double c = psi * fejer_coefficient(p_.N, p_.R, n);
      if (c <= 0.0) continue;
      for (double tj : p_.tau) {
        const double dist = std::abs(std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(n) * tj) - 1.0);
        if (!(dist < p_.delta)) throw InvariantError("active term outside T: |e^{2πinτ} − 1| >= δ");
      }
      if (n != 0 && std::labs(n) < p_.R) throw InvariantError("active term inside J");
      terms_.push_back({n, c});
    }
  }

  const WitnessParams& params() const { return p_; }
  const std::vector<ActiveTerm>& active_terms() const { return terms_; }

  double phi(const std::vector<double>& x) const {
    double out = 1.0;
    for (double xi : x) out *= detail::cubic_bspline(xi / phi_scale_) / phi_scale_;
    return out;
  }

  double phi_hat(const std::vector<double>& xi) const {
    double out = 1.0;
    for (double f : xi) {
      const double s = detail::sinc(std::numbers::pi * phi_scale_ * f);
      out *= s * s * s * s;
    }
    return out;
  }

  /// ψ at a point of the torus T^k.
  double psi(const std::vector<double>& t) const {
    double out = 1.0;
    for (double tj : t) {
      const double frac = tj - std::round(tj);
      out *= detail::cubic_bspline(frac / psi_scale_) / psi_scale_;
    }
    return out;
  }

  double psi_hat_1d(long m) const {
    const double s = detail::sinc(std::numbers::pi * psi_scale_ * static_cast<double>(m));
    return s * s * s * s;
  }

  /// Half-width of φ's support cube along each axis.
  double phi_half_width() const { return 2.0 * phi_scale_; }

 private:
  double psi_at_multiple(long n) const {
    std::vector<double> t;
    for (double tj : p_.tau) t.push_back(static_cast<double>(n) * tj);
    return psi(t);
  }

  WitnessParams p_;
  double phi_scale_ = 1.0;
  double psi_scale_ = 1.0;
  std::vector<ActiveTerm> terms_;
};

inline WitnessFunction witness_build(const WitnessParams& params) { return WitnessFunction(params); }

/// Space side: finitely many translates of φ centred at n v.
inline double witness_eval(const WitnessFunction& g, const std::vector<double>& x) {
  const auto& p = g.params();
  if (x.size() != p.dim()) throw InputError("point dimension mismatch");
  double sum = 0.0;
  std::vector<double> y(x.size());
  for (const auto& term : g.active_terms()) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - static_cast<double>(term.n) * to_double(p.v[i]);
    sum += term.coeff * g.phi(y);
  }
  return sum;
}

/// ĝ_N(ξ) from the finite space-side sum: φ̂(ξ) Σ_n c_n cos(2π n <v,ξ>).
inline double witness_ft_direct(const WitnessFunction& g, const std::vector<double>& xi) {
  const auto& p = g.params();
  double vx = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) vx += to_double(p.v[i]) * xi[i];
  double sum = 0.0;
  for (const auto& term : g.active_terms())
    sum += term.coeff * std::cos(2 * std::numbers::pi * static_cast<double>(term.n) * vx);
  return g.phi_hat(xi) * sum;
}

struct WitnessFt {
  double value = 0.0;
  double truncation_bound = 0.0;  // value <= true ĝ(ξ) <= value + truncation_bound
  long cutoff = 0;                // |m_j| <= cutoff
};

/// Cutoff M with Σ_{m ∉ [−M,M]^k} ψ̂(m) below target, from the bound
/// Σ_{|m|>M} sinc⁴(π s m) <= 2 / (3 π⁴ s⁴ M³) per axis; capped at max_cutoff.
inline long witness_cutoff(const WitnessFunction& g, double target = 1e-9, long max_cutoff = 20000) {
  const double s = to_double(g.params().w) / 2.0;
  const double k = static_cast<double>(g.params().tau.size());
  const double c = 2.0 / (3.0 * std::pow(std::numbers::pi * s, 4));
  const double full = 2.0 / (3.0 * s);  // Σ_m ψ̂_1(m) = ψ_1(0)
  const double per_axis = target / (k * std::pow(full, k - 1.0));
  double m = std::cbrt(c / per_axis);
  if (!(m < static_cast<double>(max_cutoff))) return max_cutoff;
  return std::max<long>(1, static_cast<long>(std::ceil(m)));
}

inline double witness_tail_mass(const WitnessFunction& g, long cutoff) {
  const double s = to_double(g.params().w) / 2.0;
  const double k = static_cast<double>(g.params().tau.size());
  const double tail1 = 2.0 / (3.0 * std::pow(std::numbers::pi * s, 4) * std::pow(static_cast<double>(cutoff), 3));
  const double full = 2.0 / (3.0 * s);
  return k * tail1 * std::pow(full, k - 1.0);
}

/// Frequency side: φ̂(ξ) Σ_{|m_j| <= M} ψ̂(m) p_N(<m,τ> − <v,ξ>). Every term
/// is nonnegative, so truncation only undershoots.
inline WitnessFt witness_ft(const WitnessFunction& g, const std::vector<double>& xi, long cutoff = 0) {
  const auto& p = g.params();
  if (xi.size() != p.dim()) throw InputError("frequency dimension mismatch");
  WitnessFt out;
  out.cutoff = cutoff > 0 ? cutoff : witness_cutoff(g);
  double vx = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) vx += to_double(p.v[i]) * xi[i];
  const std::size_t k = p.tau.size();
  const long m_cut = out.cutoff;
  std::vector<double> psi_hat(static_cast<std::size_t>(m_cut) + 1);
  for (long m = 0; m <= m_cut; ++m) psi_hat[static_cast<std::size_t>(m)] = g.psi_hat_1d(m);
  std::vector<long> m(k, -m_cut);
  double sum = 0.0;
  for (;;) {
    double weight = 1.0, phase = -vx;
    for (std::size_t j = 0; j < k; ++j) {
      weight *= psi_hat[static_cast<std::size_t>(std::labs(m[j]))];
      phase += static_cast<double>(m[j]) * p.tau[j];
    }
    sum += weight * fejer(p.N, static_cast<double>(p.R) * phase);
    std::size_t j = 0;
    while (j < k && ++m[j] > m_cut) m[j++] = -m_cut;
    if (j == k) break;
  }
  const double phi_hat = g.phi_hat(xi);
  out.value = phi_hat * sum;
  out.truncation_bound = phi_hat * witness_tail_mass(g, m_cut) * static_cast<double>(p.N);
  return out;
}

struct ContradictionRow {
  long n_order = 0;
  double integral = 0.0;       // ∫ g_N = ĝ_N(0)
  double scaled_origin = 0.0;  // m(A)^{-1} g_N(0)
};

struct ContradictionReport {
  std::vector<ContradictionRow> rows;
  long crossing = 0;  // smallest scheduled N with ∫g_N > m(A)^{-1} g_N(0); 0 if none
  double origin_value = 0.0;
};

/// Doubling sweep N = 1, 2, 4, ... showing ∫g_N growing past m(A)^{-1} g_N(0).
inline ContradictionReport witness_contradiction_demo(WitnessParams params, const Rational& measure_a,
                                                      long max_order = 1L << 20) {
  if (!(measure_a > 0)) throw InputError("m(A) must be positive");
  ContradictionReport rep;
  const double inv = 1.0 / to_double(measure_a);
  const std::size_t d = params.dim();
  for (long n = 1; n <= max_order; n *= 2) {
    params.N = n;
    WitnessFunction g(params);
    ContradictionRow row;
    row.n_order = n;
    double integral = 0.0;
    for (const auto& t : g.active_terms()) integral += t.coeff;  // ∫φ = 1
    row.integral = integral;
    rep.origin_value = witness_eval(g, std::vector<double>(d, 0.0));
    row.scaled_origin = inv * rep.origin_value;
    rep.rows.push_back(row);
    if (row.integral > row.scaled_origin) {
      rep.crossing = n;
      break;
    }
  }
  return rep;
}

}  // namespace tilingobs
