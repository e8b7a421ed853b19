#include "srgkit/lti/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "srgkit/error.hpp"

namespace srg::lti {

Poly poly_trim(Poly p, double rel_tol) {
  double m = 0.0;
  for (double c : p) m = std::max(m, std::abs(c));
  while (p.size() > 1 && std::abs(p.back()) <= rel_tol * m) p.pop_back();
  if (p.empty()) p.push_back(0.0);
  if (m == 0.0) p.assign(1, 0.0);
  return p;
}

int poly_degree(const Poly& p) {
  for (int k = int(p.size()) - 1; k >= 0; --k)
    if (p[k] != 0.0) return k;
  return -1;
}

bool poly_is_zero(const Poly& p) { return poly_degree(p) < 0; }

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) r[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return poly_trim(r);
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {0.0};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return poly_trim(r);
}

Poly poly_scale(const Poly& a, double k) {
  Poly r(a);
  for (double& c : r) c *= k;
  return poly_trim(r);
}

Complex poly_eval(const Poly& p, Complex s) {
  Complex acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * s + *it;
  return acc;
}

Poly poly_from_roots(const std::vector<Complex>& roots, double lead) {
  std::vector<Complex> c{1.0};
  for (const Complex& r : roots) {
    std::vector<Complex> n(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      n[k + 1] += c[k];
      n[k] -= r * c[k];
    }
    c = std::move(n);
  }
  Poly p(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) p[k] = lead * c[k].real();
  return p;
}

namespace {

bool durand_kerner(const std::vector<Complex>& monic, std::vector<Complex>& z, const RootOptions& opt) {
  const int n = int(z.size());
  for (int it = 0; it < opt.max_iterations; ++it) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex num = 0.0;
      for (auto c = monic.rbegin(); c != monic.rend(); ++c) num = num * z[i] + *c;
      Complex den = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      if (std::abs(den) == 0.0) den = 1e-300;
      const Complex step = num / den;
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    if (!std::isfinite(worst)) return false;
    if (worst < opt.tolerance) return true;
  }
  return false;
}

}  // namespace

std::vector<Complex> poly_roots(const Poly& p_in, const RootOptions& opt) {
  Poly p = poly_trim(p_in);
  const int deg = poly_degree(p);
  if (deg < 0) throw Error(ErrorCode::InvalidArgument, "poly_roots: zero polynomial");
  std::vector<Complex> roots;
  std::size_t lo = 0;
  while (lo < p.size() && p[lo] == 0.0) {
    roots.emplace_back(0.0, 0.0);
    ++lo;
  }
  Poly q(p.begin() + lo, p.begin() + deg + 1);
  const int n = int(q.size()) - 1;
  if (n <= 0) return roots;
  if (n == 1) {
    roots.emplace_back(-q[0] / q[1], 0.0);
    return roots;
  }
  std::vector<Complex> monic(n + 1);
  for (int k = 0; k <= n; ++k) monic[k] = q[k] / q[n];
  // root-modulus scale for the initial circle
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::pow(std::abs(monic[k].real()), 1.0 / (n - k)));
  if (bound == 0.0) bound = 1.0;
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  std::vector<Complex> z(n);
  bool ok = false;
  for (int attempt = 0; attempt <= opt.restarts && !ok; ++attempt) {
    const double radius = bound * (attempt == 0 ? 1.0 : 1.0 + 4.0 * jitter(rng));
    const Complex seed = Complex(0.4, 0.9) / std::abs(Complex(0.4, 0.9));
    for (int k = 0; k < n; ++k) {
      z[k] = radius * std::pow(seed, k);
      if (attempt > 0) z[k] *= Complex(1.0 + jitter(rng), jitter(rng));
    }
    ok = durand_kerner(monic, z, opt);
    if (!ok) {
      // accept slowly converging clusters (multiple roots) when the residual is tiny
      double res = 0.0, scale = 0.0;
      for (const Complex& r : z) {
        Complex v = 0.0;
        double a = 0.0;
        for (auto c = monic.rbegin(); c != monic.rend(); ++c) {
          v = v * r + *c;
          a = a * std::abs(r) + std::abs(*c);
        }
        res = std::max(res, std::abs(v));
        scale = std::max(scale, a);
      }
      ok = std::isfinite(res) && res <= 1e-10 * scale;
    }
  }
  if (!ok) throw Error(ErrorCode::NonConvergence, "poly_roots: Durand-Kerner did not converge");
  // Newton polish on the original polynomial
  Poly dq(n);
  for (int k = 1; k <= n; ++k) dq[k - 1] = k * q[k];
  for (Complex& r : z) {
    for (int it = 0; it < 3; ++it) {
      const Complex f = poly_eval(q, r), d = poly_eval(dq, r);
      if (std::abs(d) < 1e-300) break;
      const Complex nr = r - f / d;
      if (!std::isfinite(nr.real()) || std::abs(poly_eval(q, nr)) >= std::abs(f)) break;
      r = nr;
    }
    if (std::abs(r.imag()) <= 1e-10 * (1.0 + std::abs(r))) r = Complex(r.real(), 0.0);
  }
  // conjugate symmetrisation
  std::vector<char> used(n, 0);
  for (int i = 0; i < n; ++i) {
    if (used[i] || z[i].imag() == 0.0) continue;
    int best = -1;
    double bd = INFINITY;
    for (int j = 0; j < n; ++j) {
      if (j == i || used[j]) continue;
      const double d = std::abs(z[j] - std::conj(z[i]));
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    if (best >= 0 && bd <= 1e-6 * (1.0 + std::abs(z[i]))) {
      const Complex avg = 0.5 * (z[i] + std::conj(z[best]));
      z[i] = avg;
      z[best] = std::conj(avg);
      used[i] = used[best] = 1;
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

}  // namespace srg::lti
