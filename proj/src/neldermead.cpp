#include "qpromo/neldermead.hpp"

#include <algorithm>
#include <cmath>

#include "qpromo/errors.hpp"

namespace qpromo {

NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                     const std::vector<double>& x0, const NmOptions& opts) {
  if (!fn) throw ParameterError("nelder_mead: objective not set");
  if (x0.empty()) throw ParameterError("nelder_mead: x0 must be non-empty");
  if (opts.max_iterations < 0)
    throw ParameterError("nelder_mead: max_iterations must be >= 0");
  if (opts.step == 0.0) throw ParameterError("nelder_mead: step must be nonzero");

  const std::size_t n = x0.size();
  int evaluations = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    return fn(x);
  };

  NmResult result;
  if (opts.max_iterations == 0) {
    result.x = x0;
    result.value = eval(x0);
    result.evaluations = evaluations;
    result.trace.push_back({0, evaluations, result.value});
    return result;
  }

  struct Vertex {
    std::vector<double> x;
    double f;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = x0;
    x[i] += opts.step;
    simplex.push_back({std::move(x), 0.0});
    simplex.back().f = eval(simplex.back().x);
  }

  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::sort(simplex.begin(), simplex.end(), by_value);
  result.trace.push_back({0, evaluations, simplex.front().f});

  // Classic move coefficients: reflect 1, expand 2, contract 1/2, shrink 1/2.
  for (int iteration = 1; iteration <= opts.max_iterations; ++iteration) {
    if (simplex.back().f - simplex.front().f < opts.f_tol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / n;

    const Vertex& worst = simplex.back();
    auto blend = [&](double coef) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i)
        x[i] = centroid[i] + coef * (centroid[i] - worst.x[i]);
      return x;
    };

    std::vector<double> xr = blend(1.0);
    const double fr = eval(xr);
    if (fr < simplex.front().f) {
      std::vector<double> xe = blend(2.0);
      const double fe = eval(xe);
      if (fe < fr)
        simplex.back() = {std::move(xe), fe};
      else
        simplex.back() = {std::move(xr), fr};
    } else if (fr < simplex[n - 1].f) {
      simplex.back() = {std::move(xr), fr};
    } else {
      const bool outside = fr < worst.f;
      std::vector<double> xc = blend(outside ? 0.5 : -0.5);
      const double fc = eval(xc);
      if (fc < std::min(fr, worst.f)) {
        simplex.back() = {std::move(xc), fc};
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t i = 0; i < n; ++i)
            simplex[v].x[i] =
                simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
          simplex[v].f = eval(simplex[v].x);
        }
      }
    }

    std::sort(simplex.begin(), simplex.end(), by_value);
    result.trace.push_back({iteration, evaluations, simplex.front().f});
  }

  result.x = simplex.front().x;
  result.value = simplex.front().f;
  result.evaluations = evaluations;
  return result;
}

}  // namespace qpromo
