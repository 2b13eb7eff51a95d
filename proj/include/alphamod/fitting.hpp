#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "alphamod/errors.hpp"

namespace alphamod {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;  // max |log y - (intercept + slope * log x)|
};

// Ordinary least squares of log(value) against log(param). Used to extract
// the growth exponent of a measured quantity along a one-parameter family.
inline FitResult fit_scaling_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 4) throw DomainError("scaling fit needs at least 4 points");
  std::vector<double> lx(points.size()), ly(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].first > 0.0)) throw DomainError("scaling fit parameters must be positive");
    if (!(points[i].second > 0.0)) throw DegenerateFit("scaling fit hit a nonpositive value");
    lx[i] = std::log(points[i].first);
    ly[i] = std::log(points[i].second);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("scaling fit parameters must be distinct");
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < lx.size(); ++i)
    fit.max_residual =
        std::max(fit.max_residual, std::fabs(ly[i] - fit.intercept - fit.slope * lx[i]));
  return fit;
}

}  // namespace alphamod
