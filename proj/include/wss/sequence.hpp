#pragma once

// Closed-form positive sequences a(r) = C * rho^r * prod_i (r + s_i)^{p_i} and
// their asymptotic classes r^p (log r)^k rho^r.
//
// A class only records the exponents; constants are dropped. That is enough
// to decide convergence of every series built from these sequences by sums,
// products, powers, partial sums and tail sums, because all terms involved are
// positive.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "wss/error.hpp"
#include "wss/format.hpp"

namespace wss {

struct PowerFactor {
  double shift = 0.0;
  double power = 0.0;
};

struct ClosedForm {
  double scale = 1.0;
  double rho = 1.0;
  std::vector<PowerFactor> factors;

  double operator()(long r) const {
    double v = scale * std::pow(rho, static_cast<double>(r));
    for (const auto& f : factors) {
      if (f.power != 0.0) v *= std::pow(static_cast<double>(r) + f.shift, f.power);
    }
    return v;
  }

  /// Throws ArgumentError unless the form is finite and strictly positive for r >= from.
  void validate(long from, const std::string& what) const {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw ArgumentError(what + ": scale C must be finite and > 0");
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) {
      throw ArgumentError(what + ": rho must be finite and > 0");
    }
    for (const auto& f : factors) {
      if (!std::isfinite(f.power) || !std::isfinite(f.shift)) {
        throw ArgumentError(what + ": power and shift must be finite");
      }
      if (f.power != 0.0 && !(static_cast<double>(from) + f.shift > 0.0)) {
        throw ArgumentError(what + ": r + shift must be > 0 for every r >= " +
                            std::to_string(from));
      }
    }
  }

  double total_power() const {
    double p = 0.0;
    for (const auto& f : factors) p += f.power;
    return p;
  }

  friend ClosedForm operator*(ClosedForm a, const ClosedForm& b) {
    a.scale *= b.scale;
    a.rho *= b.rho;
    a.factors.insert(a.factors.end(), b.factors.begin(), b.factors.end());
    return a;
  }

  /// a(r + k) as a closed form in r.
  ClosedForm shifted(long k) const {
    ClosedForm out = *this;
    out.scale *= std::pow(rho, static_cast<double>(k));
    for (auto& f : out.factors) f.shift += static_cast<double>(k);
    return out;
  }

  std::string describe() const {
    std::string s = format_real(scale, 6);
    for (const auto& f : factors) {
      if (f.power == 0.0) continue;
      s += "*(r";
      if (f.shift != 0.0) s += (f.shift > 0 ? "+" : "") + format_real(f.shift, 6);
      s += ")";
      if (f.power != 1.0) s += "^" + format_real(f.power, 6);
    }
    if (rho != 1.0) s += "*" + format_real(rho, 6) + "^r";
    return s;
  }
};

/// Asymptotic class r^power (log r)^log_power rho^r, or an eventually-zero sequence.
struct Growth {
  double power = 0.0;
  double rho = 1.0;
  int log_power = 0;
  bool zero = false;

  static Growth constant() { return {}; }
  static Growth vanishing() { return {0.0, 1.0, 0, true}; }
  static Growth of(const ClosedForm& f) { return {f.total_power(), f.rho, 0, false}; }

  std::string describe() const {
    if (zero) return "0";
    std::string s = "r^" + format_real(power, 6);
    if (log_power != 0) s += "*log(r)^" + std::to_string(log_power);
    s += "*" + format_real(rho, 6) + "^r";
    return s;
  }
};

namespace growth {

inline constexpr double kTol = 1e-12;

/// -1, 0, 1 comparing x with y up to kTol.
inline int cmp(double x, double y) {
  if (std::abs(x - y) <= kTol * std::max(1.0, std::abs(y))) return 0;
  return x < y ? -1 : 1;
}

/// Sum over r of a positive sequence in class g converges.
inline bool summable(const Growth& g) {
  if (g.zero) return true;
  const int c = cmp(g.rho, 1.0);
  if (c != 0) return c < 0;
  // rho = 1: r^p (log r)^k with k >= 0 converges iff p < -1.
  return cmp(g.power, -1.0) < 0;
}

/// The sequence stays bounded.
inline bool bounded(const Growth& g) {
  if (g.zero) return true;
  const int c = cmp(g.rho, 1.0);
  if (c != 0) return c < 0;
  const int p = cmp(g.power, 0.0);
  return p < 0 || (p == 0 && g.log_power <= 0);
}

/// The sequence is bounded away from zero (inf > 0 for a positive sequence).
inline bool bounded_below(const Growth& g) {
  if (g.zero) return false;
  const int c = cmp(g.rho, 1.0);
  if (c != 0) return c > 0;
  const int p = cmp(g.power, 0.0);
  return p > 0 || (p == 0 && g.log_power >= 0);
}

inline Growth multiply(const Growth& a, const Growth& b) {
  if (a.zero || b.zero) return Growth::vanishing();
  return {a.power + b.power, a.rho * b.rho, a.log_power + b.log_power, false};
}

/// Integer power (log factors allowed) or fractional power (log-free classes only).
inline std::optional<Growth> power(const Growth& a, double e) {
  if (a.zero) {
    if (e > 0) return Growth::vanishing();
    return std::nullopt;
  }
  const bool integral = e == std::floor(e);
  if (a.log_power != 0 && !integral) return std::nullopt;
  if (a.log_power != 0 && e < 0) return std::nullopt;
  return Growth{a.power * e, std::pow(a.rho, e), static_cast<int>(a.log_power * e), false};
}

inline std::optional<Growth> reciprocal(const Growth& a) { return power(a, -1.0); }

/// Class of a(r) + b(r): the dominant term.
inline Growth add(const Growth& a, const Growth& b) {
  if (a.zero) return b;
  if (b.zero) return a;
  int c = cmp(a.rho, b.rho);
  if (c == 0) c = cmp(a.power, b.power);
  if (c == 0) c = a.log_power < b.log_power ? -1 : (a.log_power > b.log_power ? 1 : 0);
  return c >= 0 ? a : b;
}

/// Class of the partial sums sum_{k<=r} a(k) of a positive sequence.
inline Growth cumulative(const Growth& a) {
  if (a.zero) return a;
  const int c = cmp(a.rho, 1.0);
  if (c > 0) return a;
  if (c < 0) return Growth::constant();
  const int p = cmp(a.power, -1.0);
  if (p > 0) return {a.power + 1.0, 1.0, a.log_power, false};
  if (p == 0) return {0.0, 1.0, a.log_power + 1, false};
  return Growth::constant();
}

/// Class of the tail sums sum_{k>r} a(k); only for summable classes.
inline std::optional<Growth> tail(const Growth& a) {
  if (!summable(a)) return std::nullopt;
  if (a.zero) return a;
  if (cmp(a.rho, 1.0) < 0) return a;
  return Growth{a.power + 1.0, 1.0, a.log_power, false};
}

}  // namespace growth
}  // namespace wss
