#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rsl {

/// f(s) = scale * e^s.
struct ExponentialFn {
  double scale = 1.0;
};

/// f(s) = scale * (1+s)^p, clamped to 0 for 1+s <= 0 (never reached by the
/// solution families this pairs with, where 1+u > 0).
struct PowerFn {
  double p = 2.0;
  double scale = 1.0;
};

/// f(s) = -alpha (alpha + N - 2) s^{1-2/alpha}, the nonlinearity solved by
/// u(r) = r^alpha with alpha < 0.  The closed form is stated for s >= 1;
/// the same formula is smooth for all s > 0 and is used there as well.
/// On r in (0,1] the paired solution satisfies u >= 1, so the extension is
/// inert.  For s <= 0 the value is clamped to 0.
struct AlphaFamilyFn {
  double alpha = -1.0;
  int dimension = 3;
};

struct ZeroFn {};

/// Piecewise-linear table of f and f' against s, constant beyond the ends.
struct TabulatedFn {
  std::vector<double> s;
  std::vector<double> f;
  std::vector<double> fp;
};

/// Evaluable pair (f, f') with named closed-form variants and a tabulated
/// fallback.  `primitive_available` records whether an antiderivative of f
/// is known in closed form; nothing in the analysis consumes it.
class Nonlinearity {
 public:
  using Variant =
      std::variant<ZeroFn, ExponentialFn, PowerFn, AlphaFamilyFn, TabulatedFn>;

  Nonlinearity() : v_(ZeroFn{}) {}
  explicit Nonlinearity(Variant v, double outer_scale = 1.0)
      : v_(std::move(v)), outer_(outer_scale) {
    validate();
  }

  static Nonlinearity zero() { return Nonlinearity(ZeroFn{}); }
  static Nonlinearity exponential(double scale) {
    return Nonlinearity(ExponentialFn{scale});
  }
  static Nonlinearity power(double p, double scale) {
    return Nonlinearity(PowerFn{p, scale});
  }
  static Nonlinearity alpha_family(double alpha, int dimension) {
    return Nonlinearity(AlphaFamilyFn{alpha, dimension});
  }
  static Nonlinearity constant(double c) {
    return Nonlinearity(TabulatedFn{{0.0, 1.0}, {c, c}, {0.0, 0.0}});
  }
  static Nonlinearity tabulated(std::vector<double> s, std::vector<double> f,
                                std::vector<double> fp) {
    return Nonlinearity(TabulatedFn{std::move(s), std::move(f), std::move(fp)});
  }

  double f(double s) const { return outer_ * eval_f(s); }
  double fprime(double s) const { return outer_ * eval_fp(s); }

  /// The same nonlinearity multiplied by a constant factor (both f and f').
  Nonlinearity scaled(double factor) const {
    return Nonlinearity(v_, outer_ * factor);
  }

  bool primitive_available() const {
    return !std::holds_alternative<TabulatedFn>(v_);
  }

  const Variant& variant() const { return v_; }

  std::string describe() const {
    std::ostringstream os;
    if (outer_ != 1.0) os << outer_ << "*";
    if (std::holds_alternative<ZeroFn>(v_)) {
      os << "zero";
    } else if (auto* e = std::get_if<ExponentialFn>(&v_)) {
      os << "exp(scale=" << e->scale << ")";
    } else if (auto* p = std::get_if<PowerFn>(&v_)) {
      os << "power(p=" << p->p << ",scale=" << p->scale << ")";
    } else if (auto* a = std::get_if<AlphaFamilyFn>(&v_)) {
      os << "alpha(a=" << a->alpha << ",N=" << a->dimension << ")";
    } else {
      os << "tabulated";
    }
    return os.str();
  }

 private:
  void validate() const {
    if (auto* a = std::get_if<AlphaFamilyFn>(&v_)) {
      if (!(a->alpha < 0.0))
        throw std::invalid_argument("Nonlinearity: alpha family needs alpha < 0");
      if (a->dimension < 2)
        throw std::invalid_argument("Nonlinearity: alpha family needs N >= 2");
    }
    if (auto* t = std::get_if<TabulatedFn>(&v_)) {
      if (t->s.size() < 2 || t->f.size() != t->s.size() ||
          t->fp.size() != t->s.size())
        throw std::invalid_argument("Nonlinearity: tabulated arrays mismatched");
      for (std::size_t i = 1; i < t->s.size(); ++i)
        if (!(t->s[i] > t->s[i - 1]))
          throw std::invalid_argument("Nonlinearity: tabulated s not increasing");
    }
  }

  double eval_f(double s) const {
    if (std::holds_alternative<ZeroFn>(v_)) return 0.0;
    if (auto* e = std::get_if<ExponentialFn>(&v_)) return e->scale * std::exp(s);
    if (auto* p = std::get_if<PowerFn>(&v_)) {
      const double base = 1.0 + s;
      if (base <= 0.0) return 0.0;
      return p->scale * std::pow(base, p->p);
    }
    if (auto* a = std::get_if<AlphaFamilyFn>(&v_)) {
      if (s <= 0.0) return 0.0;
      const double c = -a->alpha * (a->alpha + a->dimension - 2.0);
      return c * std::pow(s, 1.0 - 2.0 / a->alpha);
    }
    const auto& t = std::get<TabulatedFn>(v_);
    return table_eval(t.s, t.f, s);
  }

  double eval_fp(double s) const {
    if (std::holds_alternative<ZeroFn>(v_)) return 0.0;
    if (auto* e = std::get_if<ExponentialFn>(&v_)) return e->scale * std::exp(s);
    if (auto* p = std::get_if<PowerFn>(&v_)) {
      const double base = 1.0 + s;
      if (base <= 0.0) return 0.0;
      return p->scale * p->p * std::pow(base, p->p - 1.0);
    }
    if (auto* a = std::get_if<AlphaFamilyFn>(&v_)) {
      if (s <= 0.0) return 0.0;
      const double c = -a->alpha * (a->alpha + a->dimension - 2.0);
      return c * (1.0 - 2.0 / a->alpha) * std::pow(s, -2.0 / a->alpha);
    }
    const auto& t = std::get<TabulatedFn>(v_);
    return table_eval(t.s, t.fp, s);
  }

  static double table_eval(const std::vector<double>& xs,
                           const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + t * (ys[i + 1] - ys[i]);
  }

  Variant v_;
  double outer_ = 1.0;
};

/// Max relative mismatch between f' and a centered finite difference of f
/// over sample points; used to cross-check tabulated derivative data.
inline double derivative_consistency_error(const Nonlinearity& nl, double lo,
                                           double hi, int samples = 64) {
  if (!(hi > lo)) throw std::invalid_argument("derivative check: empty range");
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double s = lo + (hi - lo) * double(i) / double(samples);
    const double h = 1e-6 * (1.0 + std::abs(s));
    const double fd = (nl.f(s + h) - nl.f(s - h)) / (2.0 * h);
    const double fp = nl.fprime(s);
    const double scale = std::max({std::abs(fd), std::abs(fp), 1.0});
    worst = std::max(worst, std::abs(fd - fp) / scale);
  }
  return worst;
}

}  // namespace rsl
