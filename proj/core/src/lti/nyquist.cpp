#include "srgkit/lti/nyquist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "srgkit/error.hpp"

namespace srg::lti {

namespace {

Complex chart(Complex z) {
  const double m = std::abs(z);
  if (!std::isfinite(m)) return z / (m == m ? m : 1.0);
  return z / (1.0 + m);
}

// A point of the D-contour together with how to bisect towards its successor.
struct ContourPoint {
  Complex s;
  int kind;        // 0 axis, 1 circle (indentation or closing arc)
  Complex center;  // for circles
};

Complex midpoint(const ContourPoint& a, const ContourPoint& b) {
  if (a.kind == 1 || b.kind == 1) {
    const Complex c = a.kind == 1 ? a.center : b.center;
    const double r = std::abs(a.s - c);
    double ta = std::arg(a.s - c), tb = std::arg(b.s - c);
    double d = tb - ta;
    while (d > M_PI) d -= 2 * M_PI;
    while (d < -M_PI) d += 2 * M_PI;
    return c + std::polar(r, ta + 0.5 * d);
  }
  const double wa = a.s.imag(), wb = b.s.imag();
  if (wa * wb > 0) return {0.0, std::copysign(std::sqrt(wa * wb), wa)};
  return {0.0, 0.5 * (wa + wb)};
}

void log_points(std::vector<double>& out, double lo, double hi, double per_decade) {
  if (!(hi > lo) || lo <= 0) return;
  const int n = std::max(2, int(std::ceil(std::log10(hi / lo) * per_decade)) + 1);
  for (int k = 0; k < n; ++k) out.push_back(lo * std::pow(hi / lo, double(k) / (n - 1)));
}

}  // namespace

std::vector<Complex> NyquistCurve::positive_branch() const {
  std::vector<std::pair<double, Complex>> pts;
  for (std::size_t k = 0; k < samples.size(); ++k)
    if (contour[k].real() == 0.0 && contour[k].imag() >= 0.0) pts.emplace_back(contour[k].imag(), samples[k]);
  std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Complex> out;
  for (const auto& p : pts) out.push_back(p.second);
  return out;
}

NyquistCurve nyquist_curve(const TransferFunction& f, const FrequencyGrid& g) {
  NyquistCurve c;
  const double R = g.arc_radius, rho = g.indentation;
  std::vector<double> poles_w;
  for (const Complex& p : f.imaginary_axis_poles()) {
    const double w = p.imag();
    bool dup = false;
    for (double q : poles_w) dup = dup || std::abs(q - w) <= 1e-9 * (1.0 + std::abs(w));
    if (!dup) poles_w.push_back(w);
  }
  std::sort(poles_w.begin(), poles_w.end());
  c.indentations = poles_w;
  c.reaches_infinity = !f.is_proper() || !poles_w.empty();

  if (f.is_constant()) {
    const Complex v = f(0.0);
    c.samples = {v};
    c.contour = {0.0};
    c.frequencies = {0.0};
    c.finite_diameter = 0.0;
    return c;
  }

  // positive axis frequencies
  std::vector<double> pos;
  log_points(pos, g.w_min, g.w_max, (g.points_per_sign - 1) / std::log10(g.w_max / g.w_min));
  log_points(pos, rho / 10.0, g.w_min, 20.0);
  log_points(pos, g.w_max, R, 20.0);
  for (double w : poles_w) {
    if (w < 0) continue;
    std::vector<double> local;
    log_points(local, rho, rho * 1e6, 20.0);
    for (double d : local) {
      pos.push_back(w + d);
      if (w - d > 0) pos.push_back(w - d);
    }
  }
  std::vector<double> axis;
  for (double w : pos)
    if (w <= R) {
      axis.push_back(w);
      axis.push_back(-w);
    }
  axis.push_back(0.0);
  axis.push_back(R);
  axis.push_back(-R);
  std::erase_if(axis, [&](double w) {
    for (double p : poles_w)
      if (std::abs(w - p) < rho) return true;
    return false;
  });
  for (double p : poles_w) {
    axis.push_back(p - rho);
    axis.push_back(p + rho);
  }
  std::sort(axis.begin(), axis.end());
  axis.erase(std::unique(axis.begin(), axis.end()), axis.end());

  std::vector<ContourPoint> base;
  std::size_t next_pole = 0;
  for (double w : axis) {
    base.push_back({Complex(0.0, w), 0, 0.0});
    if (next_pole < poles_w.size() && std::abs(w - (poles_w[next_pole] - rho)) < 1e-15 + 1e-12 * std::abs(w)) {
      const Complex cen(0.0, poles_w[next_pole]);
      for (int k = 1; k < 32; ++k) {
        const double th = -M_PI / 2 + M_PI * k / 32;
        base.push_back({cen + std::polar(rho, th), 1, cen});
      }
      ++next_pole;
    }
  }
  for (int k = 1; k < 128; ++k) {
    const double ph = M_PI / 2 - M_PI * k / 128;
    base.push_back({std::polar(R, ph), 1, 0.0});
  }
  // the closing arc returns to the first point (-jR)

  std::vector<Complex> fb(base.size());
  std::vector<double> mods;
  for (std::size_t k = 0; k < base.size(); ++k) {
    fb[k] = f(base[k].s);
    if (std::isfinite(std::abs(fb[k]))) mods.push_back(std::abs(fb[k]));
  }
  std::sort(mods.begin(), mods.end());
  const double typical = mods.empty() ? 1.0 : mods[std::size_t(0.95 * (mods.size() - 1))];
  const double D = std::max(2.0 * typical, 1e-12);

  const std::size_t m = base.size();
  for (std::size_t k = 0; k < m; ++k) {
    const ContourPoint& a = base[k];
    const ContourPoint& b = base[(k + 1) % m];
    struct Job {
      ContourPoint a, b;
      Complex fa, fb;
      int depth;
    };
    c.contour.push_back(a.s);
    c.samples.push_back(fb[k]);
    std::vector<Job> stack{{a, b, fb[k], fb[(k + 1) % m], 0}};
    // closing segment from the last arc sample back to -jR
    if (k + 1 == m) stack.back().b = {b.s, 1, 0.0};
    while (!stack.empty()) {
      Job j = stack.back();
      stack.pop_back();
      const double df = std::abs(j.fa - j.fb);
      const double dw = std::abs(chart(j.fa) - chart(j.fb));
      const bool fine = df <= g.relative_spacing * D || dw <= g.chart_spacing;
      if (fine || j.depth >= 40 || int(c.samples.size()) >= g.max_samples) {
        if (!stack.empty()) {
          // emit the right endpoint unless it is the next base point
          c.contour.push_back(j.b.s);
          c.samples.push_back(j.fb);
        }
        continue;
      }
      ContourPoint mid{midpoint(j.a, j.b), (j.a.kind == 1 || j.b.kind == 1) ? 1 : 0,
                       j.a.kind == 1 ? j.a.center : j.b.center};
      const Complex fm = f(mid.s);
      stack.push_back({mid, j.b, fm, j.fb, j.depth + 1});
      stack.push_back({j.a, mid, j.fa, fm, j.depth + 1});
    }
  }
  for (const Complex& s : c.contour) c.frequencies.push_back(s.imag());
  double dmax = 0.0;
  for (const Complex& z : c.samples)
    if (std::abs(z) < 1e6 * (1.0 + typical)) dmax = std::max(dmax, std::abs(z));
  c.finite_diameter = 2.0 * dmax;
  return c;
}

double winding_number_raw(const NyquistCurve& c, Complex z) {
  const auto& p = c.samples;
  if (p.size() < 2) return std::abs(p.empty() ? 1.0 : p[0] - z) > 0 ? 0.0 : NAN;
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const Complex a = p[k] - z, b = p[(k + 1) % p.size()] - z;
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0) return NAN;
    total += std::arg(b / a);
  }
  return -total / (2.0 * M_PI);
}

int winding_number(const NyquistCurve& c, Complex z) {
  const double w = winding_number_raw(c, z);
  const double r = std::round(w);
  if (!std::isfinite(w) || std::abs(w - r) > 0.1) {
    std::ostringstream o;
    o << "winding number about " << z << " is ill-conditioned (" << w << ")";
    throw Error(ErrorCode::IllConditionedWinding, o.str());
  }
  return int(r);
}

NyquistVerdict nyquist_criterion(const TransferFunction& L, const FrequencyGrid& grid) {
  NyquistVerdict v;
  v.n_p = L.unstable_pole_count();
  const NyquistCurve c = nyquist_curve(L, grid);
  const Complex m1(-1.0, 0.0);
  // -1 on the curve: 1 + L has a root on the imaginary axis
  const TransferFunction one_plus = tf_add(L, 1.0);
  const bool marginal_root = [&] {
    if (one_plus.is_zero()) return true;
    for (const Complex& z : one_plus.zeros())
      if (std::abs(z.real()) <= kPoleTolerance) return true;
    return false;
  }();
  if (marginal_root) throw Error(ErrorCode::MarginalStability, "nyquist_criterion: -1 lies on the Nyquist curve");
  try {
    v.n_n = winding_number(c, m1);
  } catch (const Error& e) {
    throw Error(ErrorCode::MarginalStability, std::string("nyquist_criterion: ") + e.what());
  }
  v.n_z = v.n_n + v.n_p;
  return v;
}

std::string nyquist_csv(const NyquistCurve& c) {
  std::ostringstream o;
  o.precision(12);
  o << "omega,re,im\n";
  for (std::size_t k = 0; k < c.samples.size(); ++k)
    o << c.frequencies[k] << ',' << c.samples[k].real() << ',' << c.samples[k].imag() << '\n';
  return o.str();
}

}  // namespace srg::lti
