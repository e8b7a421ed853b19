#pragma once

#include <complex>
#include <vector>

namespace srg::lti {

using Complex = std::complex<double>;
// Real coefficients, ascending powers of s.
using Poly = std::vector<double>;

Poly poly_trim(Poly p, double rel_tol = 1e-14);
int poly_degree(const Poly& p);
bool poly_is_zero(const Poly& p);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double k);
Complex poly_eval(const Poly& p, Complex s);
// Monic-times-lead reconstruction; imaginary parts of the expanded product are dropped.
Poly poly_from_roots(const std::vector<Complex>& roots, double lead = 1.0);

struct RootOptions {
  double tolerance = 1e-12;
  int max_iterations = 1000;
  int restarts = 4;
};

// Durand-Kerner iteration with Newton polish. Exact zero roots are factored
// out first. Throws NonConvergence if no restart converges.
std::vector<Complex> poly_roots(const Poly& p, const RootOptions& opt = {});

}  // namespace srg::lti
