#include "srgkit/sim/empirical.hpp"

#include <cmath>

#include "srgkit/error.hpp"
#include "srgkit/sim/state_space.hpp"
#include "srgkit/sim/word_sim.hpp"

namespace srg::sim {

System lti_system(const lti::TransferFunction& f, double h) {
  const DiscreteSystem proto = tustin(realize_state_space(f), h);
  return [proto](const std::vector<double>& u) {
    DiscreteSystem s = proto;
    std::vector<double> y;
    y.reserve(u.size());
    for (double x : u) {
      y.push_back(s.peek(x));
      s.commit(x);
    }
    return y;
  };
}

System static_system(const nonlin::Nonlinearity& phi) {
  return [f = phi.eval](const std::vector<double>& u) {
    std::vector<double> y(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) y[k] = f(u[k]);
    return y;
  };
}

System word_system(const lang::ExprPtr& e, const lang::OperatorTable& t, double h) {
  auto sim = std::make_shared<WordSimulator>(e, t, h);
  return [sim](const std::vector<double>& u) {
    sim->reset();
    return sim->run(u);
  };
}

std::vector<double> random_input(std::mt19937_64& rng, const EmpiricalOptions& o) {
  std::uniform_int_distribution<int> count(1, std::max(1, o.max_sines));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int m = count(rng);
  std::vector<double> w(m), a(m), ph(m);
  const double scale = o.amp_lo * std::pow(o.amp_hi / o.amp_lo, unit(rng));
  for (int k = 0; k < m; ++k) {
    w[k] = o.w_lo * std::pow(o.w_hi / o.w_lo, unit(rng));
    a[k] = scale * (2.0 * unit(rng) - 1.0);
    ph[k] = 2.0 * M_PI * unit(rng);
  }
  const std::size_t n_in = std::size_t(std::llround(o.T / o.h)) + 1;
  const std::size_t n = n_in + std::size_t(std::llround(o.tail / o.h));
  std::vector<double> u(n, 0.0);
  const double edge = 0.5 * o.tukey * o.T;
  for (std::size_t i = 0; i < n_in; ++i) {
    const double t = double(i) * o.h;
    double win = 1.0;
    if (edge > 0 && t < edge)
      win = 0.5 * (1.0 - std::cos(M_PI * t / edge));
    else if (edge > 0 && t > o.T - edge)
      win = 0.5 * (1.0 - std::cos(M_PI * (o.T - t) / edge));
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += a[k] * std::sin(w[k] * t + ph[k]);
    u[i] = win * s;
  }
  return u;
}

double inner(const std::vector<double>& a, const std::vector<double>& b, double h) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n < 2) return 0.0;
  double s = 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1]);
  for (std::size_t k = 1; k + 1 < n; ++k) s += a[k] * b[k];
  return s * h;
}

std::optional<Complex> srg_point(const IoRecord& a, const IoRecord* b, double h) {
  std::vector<double> du = a.u, dy = a.y;
  if (b) {
    for (std::size_t k = 0; k < du.size(); ++k) {
      du[k] -= b->u[k];
      dy[k] -= b->y[k];
    }
  }
  const double nu = std::sqrt(inner(du, du, h));
  if (!(nu > 1e-12)) return std::nullopt;
  const double ny = std::sqrt(inner(dy, dy, h));
  if (ny == 0.0) return Complex(0.0, 0.0);
  const double c = std::clamp(inner(du, dy, h) / (nu * ny), -1.0, 1.0);
  return std::polar(ny / nu, std::acos(c));
}

std::vector<IoRecord> random_runs(const System& sys, int n, const EmpiricalOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<IoRecord> out;
  out.reserve(std::size_t(n));
  for (int k = 0; k < n; ++k) {
    IoRecord r;
    r.u = random_input(rng, o);
    r.y = sys(r.u);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Complex> empirical_srg_samples(const System& sys, int n_pairs, Mode mode, const EmpiricalOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<Complex> pts;
  IoRecord zero;
  if (mode == Mode::NonIncremental) {
    zero.u.assign(std::size_t(std::llround(o.T / o.h)) + 1 + std::size_t(std::llround(o.tail / o.h)), 0.0);
    zero.y = sys(zero.u);
  }
  for (int k = 0; k < n_pairs; ++k) {
    IoRecord a;
    a.u = random_input(rng, o);
    a.y = sys(a.u);
    std::optional<Complex> z;
    if (mode == Mode::Incremental) {
      IoRecord b;
      b.u = random_input(rng, o);
      b.y = sys(b.u);
      z = srg_point(a, &b, o.h);
    } else {
      z = srg_point(a, &zero, o.h);
    }
    if (!z) continue;
    pts.push_back(*z);
    pts.push_back(std::conj(*z));
  }
  return pts;
}

double gain_estimate(const std::vector<IoRecord>& runs, Mode mode, double h) {
  double best = 0.0;
  bool any = false;
  auto scan = [&](const std::vector<double>& du, const std::vector<double>& dy) {
    const std::size_t n = std::min(du.size(), dy.size());
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += du[k] * du[k];
    if (!(total * h > 1e-24)) return;
    any = true;
    // truncations start once the input has a tenth of a percent of its energy
    double su = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double wgt = (k == 0) ? 0.5 : 1.0;
      su += wgt * du[k] * du[k];
      sy += wgt * dy[k] * dy[k];
      if (su >= 1e-3 * total) best = std::max(best, std::sqrt(sy / su));
    }
  };
  if (mode == Mode::Incremental) {
    for (std::size_t k = 0; k + 1 < runs.size(); k += 2) {
      std::vector<double> du = runs[k].u, dy = runs[k].y;
      for (std::size_t i = 0; i < du.size(); ++i) {
        du[i] -= runs[k + 1].u[i];
        dy[i] -= runs[k + 1].y[i];
      }
      scan(du, dy);
    }
  } else {
    for (const auto& r : runs) scan(r.u, r.y);
  }
  if (!any) throw Error(ErrorCode::InvalidArgument, "gain_estimate: every input is zero");
  return best;
}

}  // namespace srg::sim
