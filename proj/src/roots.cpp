#include <algorithm>
#include <cmath>
#include <numbers>

#include "ahx/numerics.hpp"

namespace ahx::numerics {

namespace {

constexpr int kMaxSweeps = 1000;
constexpr double kEps = 2.220446049250313e-16;

// Value and derivative of the monic polynomial by Horner.
std::pair<Complex, Complex> eval_with_derivative(std::span<const Complex> lower, Complex x) {
  Complex p{1.0, 0.0};
  Complex dp{0.0, 0.0};
  for (std::size_t k = lower.size(); k-- > 0;) {
    dp = dp * x + p;
    p = p * x + lower[k];
  }
  return {p, dp};
}

// Taylor coefficients of the monic polynomial about c, lowest first.
std::vector<Complex> taylor_at(std::span<const Complex> lower, Complex c) {
  std::vector<Complex> coeffs(lower.begin(), lower.end());
  coeffs.push_back(Complex{1.0, 0.0});
  const std::size_t n = coeffs.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = n - 1; k-- > j;) coeffs[k] += c * coeffs[k + 1];
  }
  return coeffs;
}

// Same recursion applied to |a_k| and |c|: a scale for each Taylor coefficient.
std::vector<double> taylor_scale(std::span<const Complex> lower, double radius) {
  std::vector<double> coeffs;
  for (auto a : lower) coeffs.push_back(std::abs(a));
  coeffs.push_back(1.0);
  const std::size_t n = coeffs.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t k = n - 1; k-- > j;) coeffs[k] += radius * coeffs[k + 1];
  }
  return coeffs;
}

bool lex_less(Complex a, Complex b) {
  if (std::abs(a.real() - b.real()) > kRootClusterTol * 1e-2) return a.real() < b.real();
  return a.imag() < b.imag();
}

struct Cluster {
  Complex sum{0.0, 0.0};
  int count = 0;
  Complex centre() const { return sum / static_cast<double>(count); }
};

// Single-linkage components of `points`; two points link when their centres
// are within radius_abs + radius_rel * (1 + max modulus).
std::vector<std::vector<std::size_t>> components(const std::vector<Cluster>& points, double radius_abs,
                                                 double radius_rel) {
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex a = points[i].centre();
      const Complex b = points[j].centre();
      const double r = radius_abs + radius_rel * (1.0 + std::max(std::abs(a), std::abs(b)));
      if (std::abs(a - b) <= r) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return out;
}

Cluster combine(const std::vector<Cluster>& points, const std::vector<std::size_t>& members) {
  Cluster c;
  for (auto i : members) {
    c.sum += points[i].sum;
    c.count += points[i].count;
  }
  return c;
}

}  // namespace

Complex eval_monic(std::span<const Complex> lower, Complex x) {
  return eval_with_derivative(lower, x).first;
}

std::vector<Root> complex_roots(std::span<const Complex> lower, const Tolerances& tol) {
  const std::size_t n = lower.size();
  if (n == 0) throw Error(ErrorKind::DegenerateDegree, "complex_roots needs degree >= 1");
  for (auto a : lower) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorKind::InvalidArgument, "non-finite polynomial coefficient");
    }
  }
  double coeff_sum = 1.0;
  for (auto a : lower) coeff_sum += std::abs(a);
  const double residual_bound = tol.root_tol * coeff_sum;

  std::vector<Complex> z(n);
  if (n == 1) {
    z[0] = -lower[0];
  } else {
    // Aberth-Ehrlich iteration from points on a circle enclosing all roots.
    double radius = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      radius = std::max(radius, 2.0 * std::pow(std::abs(lower[k]), 1.0 / static_cast<double>(n - k)));
    }
    radius = std::max(radius, 1e-3);
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
      z[k] = std::polar(radius * 0.5, angle);
    }
    int stalled = 0;
    bool done = false;
    for (int sweep = 0; sweep < kMaxSweeps && !done; ++sweep) {
      double max_step = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        auto [p, dp] = eval_with_derivative(lower, z[k]);
        if (p == Complex{0.0, 0.0}) continue;
        Complex repulsion{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
          if (j == k) continue;
          Complex diff = z[k] - z[j];
          if (diff == Complex{0.0, 0.0}) diff = Complex{kEps, kEps};
          repulsion += 1.0 / diff;
        }
        const Complex ratio = p / dp;
        Complex step = ratio / (1.0 - ratio * repulsion);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
          step = std::polar(1e-3 * (1.0 + std::abs(z[k])), 0.7 * static_cast<double>(k + 1));
        }
        z[k] -= step;
        max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[k])));
      }
      double max_residual = 0.0;
      for (auto r : z) max_residual = std::max(max_residual, std::abs(eval_monic(lower, r)));
      // Keep iterating past the residual test until the steps stop shrinking:
      // multiple roots converge linearly and clustering needs the extra digits.
      if (max_residual <= residual_bound) {
        if (max_step <= 8 * kEps) done = true;
        else if (++stalled > 60) done = true;
      }
    }
    double max_residual = 0.0;
    for (auto r : z) max_residual = std::max(max_residual, std::abs(eval_monic(lower, r)));
    if (max_residual > residual_bound) {
      throw Error(ErrorKind::NonConvergence,
                  "root residual " + std::to_string(max_residual) + " above bound after 1000 sweeps");
    }
  }

  std::vector<Cluster> singles;
  for (auto r : z) singles.push_back(Cluster{r, 1});
  std::vector<Cluster> clusters;
  for (const auto& members : components(singles, kRootClusterTol, 0.0)) {
    clusters.push_back(combine(singles, members));
  }

  // Roots of multiplicity m are only resolved to about (eps * scale / |q(c)|)^(1/m),
  // q being the cofactor. Nearby clusters are merged when their spread is
  // within that resolution at the centroid; wider spreads stay separate.
  std::vector<Cluster> merged;
  for (const auto& members : components(clusters, 0.0, 1e-4)) {
    const Cluster wide = combine(clusters, members);
    bool multiple = members.size() > 1;
    if (multiple) {
      const Complex c = wide.centre();
      double spread = 0.0;
      for (auto i : members) spread = std::max(spread, std::abs(clusters[i].centre() - c));
      const auto taylor = taylor_at(lower, c);
      const auto scale = taylor_scale(lower, std::abs(c));
      const double cofactor = std::max(std::abs(taylor[static_cast<std::size_t>(wide.count)]), 1e-300);
      const double resolution = 10.0 * std::pow(1e-14 * scale[0] / cofactor, 1.0 / wide.count);
      multiple = spread <= resolution;
    }
    if (multiple) {
      merged.push_back(wide);
    } else {
      for (auto i : members) merged.push_back(clusters[i]);
    }
  }
  clusters = std::move(merged);

  // A root of multiplicity m is a simple root of the (m-1)-th derivative;
  // a few Newton steps there recover the digits lost by the iteration.
  for (auto& c : clusters) {
    if (c.count < 2) continue;
    const auto m = static_cast<std::size_t>(c.count);
    Complex x = c.centre();
    for (int it = 0; it < 5; ++it) {
      const auto taylor = taylor_at(lower, x);
      if (taylor[m] == Complex{0.0, 0.0}) break;
      const Complex step = taylor[m - 1] / (static_cast<double>(m) * taylor[m]);
      if (!(std::abs(step) < 1e-3 * (1.0 + std::abs(x)))) break;
      x -= step;
    }
    c.sum = x * static_cast<double>(c.count);
  }

  std::vector<Root> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(Root{c.centre(), c.count});
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return lex_less(a.value, b.value); });
  return out;
}

std::vector<Complex> expand_roots(const std::vector<Root>& roots) {
  std::vector<Complex> out;
  for (const auto& r : roots) {
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
  }
  return out;
}

}  // namespace ahx::numerics
