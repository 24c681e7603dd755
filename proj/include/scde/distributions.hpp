#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "scde/model.hpp"
#include "scde/rng.hpp"

namespace scde {

class GaussianDist final : public Distribution
{
public:
  const std::string& name() const override
  {
    static const std::string n = "gaussian";
    return n;
  }

  double pdf(double x) const override
  {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  }

  Complex cf(double t) const override { return { std::exp(-0.5 * t * t), 0.0 }; }

  std::vector<double> draw(Rng& rng, std::size_t n) const override
  {
    std::vector<double> out(n);
    for (double& v : out)
      v = rng.next_gaussian();
    return out;
  }

  double pdf_sq_outside(double lo, double hi) const override
  {
    // int_r^inf pdf^2 = erfc(r) / (4 sqrt(pi))
    return (std::erfc(-lo) + std::erfc(hi)) /
           (4.0 * std::sqrt(std::numbers::pi));
  }
};

class CauchyDist final : public Distribution
{
public:
  const std::string& name() const override
  {
    static const std::string n = "cauchy";
    return n;
  }

  double pdf(double x) const override
  {
    return 1.0 / (std::numbers::pi * (1.0 + x * x));
  }

  Complex cf(double t) const override { return { std::exp(-std::abs(t)), 0.0 }; }

  std::vector<double> draw(Rng& rng, std::size_t n) const override
  {
    std::vector<double> out(n);
    for (double& v : out)
      v = std::tan(std::numbers::pi * (rng.next_unit() - 0.5));
    return out;
  }

  double pdf_sq_outside(double lo, double hi) const override
  {
    const double pi = std::numbers::pi;
    auto upper_tail = [&](double r) {
      // int_r^inf dx / (pi^2 (1+x^2)^2)
      return (pi / 4.0 - r / (2.0 * (1.0 + r * r)) - std::atan(r) / 2.0) /
             (pi * pi);
    };
    return upper_tail(-lo) + upper_tail(hi);
  }
};

//! Six-component Gaussian mixture with geometrically shrinking weights and
//! widths; a multimodal, multiscale test density.
//! Parameters from Marron & Wand (1992), density #14 ("smooth comb"):
//! weights 2^(5-l)/63, means (65 - 96*2^(-l))/21, sigmas (32/63)*2^(-l).
class CombDist final : public Distribution
{
public:
  CombDist()
  {
    for (int l = 0; l < 6; ++l) {
      const double p = std::pow(2.0, static_cast<double>(-l));
      weights_[l] = std::pow(2.0, 5.0 - l) / 63.0;
      means_[l] = (65.0 - 96.0 * p) / 21.0;
      sigmas_[l] = (32.0 / 63.0) * p;
    }
  }

  const std::string& name() const override
  {
    static const std::string n = "comb";
    return n;
  }

  double pdf(double x) const override
  {
    double s = 0.0;
    for (int l = 0; l < 6; ++l) {
      const double z = (x - means_[l]) / sigmas_[l];
      s += weights_[l] * std::exp(-0.5 * z * z) /
           (sigmas_[l] * std::sqrt(2.0 * std::numbers::pi));
    }
    return s;
  }

  Complex cf(double t) const override
  {
    Complex s(0.0, 0.0);
    for (int l = 0; l < 6; ++l) {
      const double st = sigmas_[l] * t;
      s += weights_[l] * std::exp(-0.5 * st * st) *
           std::polar(1.0, t * means_[l]);
    }
    return s;
  }

  std::vector<double> draw(Rng& rng, std::size_t n) const override
  {
    std::vector<double> out(n);
    for (double& v : out) {
      const double u = rng.next_unit();
      double acc = 0.0;
      int pick = 5;
      for (int l = 0; l < 6; ++l) {
        acc += weights_[l];
        if (u < acc) {
          pick = l;
          break;
        }
      }
      v = means_[pick] + sigmas_[pick] * rng.next_gaussian();
    }
    return out;
  }

private:
  std::array<double, 6> weights_{};
  std::array<double, 6> means_{};
  std::array<double, 6> sigmas_{};
};

//! Uniform on [-1/2, 1/2]. Its characteristic function sinc(t/2) is not
//! integrable, so the self-consistent estimate is not guaranteed to
//! converge; provided as a known-bad case.
class BoxDist final : public Distribution
{
public:
  const std::string& name() const override
  {
    static const std::string n = "box";
    return n;
  }

  double pdf(double x) const override
  {
    return (x >= -0.5 && x <= 0.5) ? 1.0 : 0.0;
  }

  Complex cf(double t) const override
  {
    if (t == 0.0)
      return { 1.0, 0.0 };
    return { 2.0 * std::sin(0.5 * t) / t, 0.0 };
  }

  std::vector<double> draw(Rng& rng, std::size_t n) const override
  {
    std::vector<double> out(n);
    for (double& v : out)
      v = rng.next_unit() - 0.5;
    return out;
  }
};

//! Chi-squared with one degree of freedom. Its density is not square
//! integrable (pole at 0); provided as a known-bad case.
class ChiSquared1Dist final : public Distribution
{
public:
  const std::string& name() const override
  {
    static const std::string n = "chisq1";
    return n;
  }

  double pdf(double x) const override
  {
    if (x <= 0.0)
      return 0.0;
    return std::exp(-0.5 * x) / std::sqrt(2.0 * std::numbers::pi * x);
  }

  Complex cf(double t) const override
  {
    // (1 - 2it)^{-1/2}
    return std::pow(Complex(1.0, -2.0 * t), -0.5);
  }

  std::vector<double> draw(Rng& rng, std::size_t n) const override
  {
    std::vector<double> out(n);
    for (double& v : out) {
      const double z = rng.next_gaussian();
      v = z * z;
    }
    return out;
  }
};

inline std::unique_ptr<Distribution> gaussian()
{
  return std::make_unique<GaussianDist>();
}
inline std::unique_ptr<Distribution> cauchy()
{
  return std::make_unique<CauchyDist>();
}
inline std::unique_ptr<Distribution> comb()
{
  return std::make_unique<CombDist>();
}
inline std::unique_ptr<Distribution> box()
{
  return std::make_unique<BoxDist>();
}
inline std::unique_ptr<Distribution> chi_squared_1()
{
  return std::make_unique<ChiSquared1Dist>();
}

inline std::unique_ptr<Distribution> distribution_by_name(const std::string& name)
{
  if (name == "gaussian")
    return gaussian();
  if (name == "cauchy")
    return cauchy();
  if (name == "comb")
    return comb();
  if (name == "box")
    return box();
  if (name == "chisq1")
    return chi_squared_1();
  throw InvalidInput("unknown distribution '" + name + "'");
}

} // namespace scde
