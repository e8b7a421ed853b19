#include "srgkit/lti/transfer_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "srgkit/error.hpp"

namespace srg::lti {

namespace {

std::string poly_text(const Poly& p) {
  std::ostringstream o;
  o.precision(10);
  bool first = true;
  for (int k = int(p.size()) - 1; k >= 0; --k) {
    const double c = p[k];
    if (c == 0.0) continue;
    const double a = std::abs(c);
    if (!first) o << (c < 0 ? " - " : " + ");
    else if (c < 0) o << "-";
    if (k == 0 || a != 1.0) o << a;
    if (k >= 1) o << (k == 0 || a != 1.0 ? "*s" : "s");
    if (k >= 2) o << '^' << k;
    first = false;
  }
  if (first) o << "0";
  return o.str();
}

}  // namespace

TransferFunction::TransferFunction(Poly num, Poly den, std::string label, int degree_cap)
    : num_(std::move(num)), den_(std::move(den)), label_(std::move(label)) {
  reduce(degree_cap);
}

TransferFunction TransferFunction::constant(double c) { return TransferFunction({c}, {1.0}); }
TransferFunction TransferFunction::s() { return TransferFunction({0.0, 1.0}, {1.0}); }

void TransferFunction::reduce(int degree_cap) {
  num_ = poly_trim(num_);
  den_ = poly_trim(den_);
  if (poly_is_zero(den_)) throw Error(ErrorCode::InvalidArgument, "transfer function with zero denominator");
  if (poly_is_zero(num_)) {
    num_ = {0.0};
    den_ = {1.0};
    return;
  }
  // exact powers of s
  while (num_.size() > 1 && den_.size() > 1 && num_[0] == 0.0 && den_[0] == 0.0) {
    num_.erase(num_.begin());
    den_.erase(den_.begin());
  }
  if (poly_degree(num_) > degree_cap || poly_degree(den_) > degree_cap)
    throw Error(ErrorCode::DegreeOverflow, "transfer function degree exceeds cap of " + std::to_string(degree_cap));
  if (poly_degree(num_) >= 1 && poly_degree(den_) >= 1) {
    auto zs = poly_roots(num_);
    auto ps = poly_roots(den_);
    std::vector<char> zu(zs.size(), 0), pu(ps.size(), 0);
    bool cancelled = false;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      int best = -1;
      double bd = INFINITY;
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (pu[j]) continue;
        const double d = std::abs(zs[i] - ps[j]) / (1.0 + std::abs(zs[i]));
        if (d < bd) {
          bd = d;
          best = int(j);
        }
      }
      if (best < 0) continue;
      if (bd <= kCancellationTolerance) {
        zu[i] = pu[best] = 1;
        cancelled = true;
      } else if (bd <= 1e-5) {
        std::ostringstream o;
        o << "near-cancellation left in place: zero " << zs[i] << " vs pole " << ps[best];
        diagnostics_.push_back(o.str());
      }
    }
    if (cancelled) {
      // keep conjugate pairs together so the rebuilt coefficients stay real
      std::vector<Complex> zr, pr;
      for (std::size_t i = 0; i < zs.size(); ++i)
        if (!zu[i]) zr.push_back(zs[i]);
      for (std::size_t j = 0; j < ps.size(); ++j)
        if (!pu[j]) pr.push_back(ps[j]);
      const double ln = num_[poly_degree(num_)];
      const double ld = den_[poly_degree(den_)];
      num_ = poly_trim(poly_from_roots(zr, ln));
      den_ = poly_trim(poly_from_roots(pr, ld));
    }
  }
  const double lead = den_[poly_degree(den_)];
  for (double& c : num_) c /= lead;
  for (double& c : den_) c /= lead;
}

Complex TransferFunction::operator()(Complex s) const {
  const int dn = num_degree(), dd = den_degree();
  if (dn < 0) return 0.0;
  if (std::abs(s) <= 1.0) return poly_eval(num_, s) / poly_eval(den_, s);
  // reversed Horner in 1/s keeps large arguments in range
  const Complex u = 1.0 / s;
  Complex a = 0.0, b = 0.0;
  for (int k = 0; k <= dn; ++k) a = a * u + num_[k];
  for (int k = 0; k <= dd; ++k) b = b * u + den_[k];
  // num(s)/den(s) = s^(dn-dd) * a(u)/b(u) with a, b evaluated in u
  Complex r = a / b;
  const int e = dn - dd;
  if (e != 0) r *= std::pow(s, e);
  return r;
}

Complex TransferFunction::at_infinity() const {
  const int dn = num_degree(), dd = den_degree();
  if (dn < 0 || dn < dd) return 0.0;
  if (dn == dd) return num_[dn] / den_[dd];
  return {INFINITY, 0.0};
}

std::vector<Complex> TransferFunction::poles() const {
  if (den_degree() < 1) return {};
  return poly_roots(den_);
}

std::vector<Complex> TransferFunction::zeros() const {
  if (num_degree() < 1) return {};
  return poly_roots(num_);
}

int TransferFunction::unstable_pole_count() const {
  int n = 0;
  for (const Complex& p : poles())
    if (p.real() > kPoleTolerance) ++n;
  return n;
}

std::vector<Complex> TransferFunction::imaginary_axis_poles() const {
  std::vector<Complex> out;
  for (const Complex& p : poles())
    if (std::abs(p.real()) <= kPoleTolerance) out.push_back(p);
  return out;
}

bool TransferFunction::is_stable() const {
  for (const Complex& p : poles())
    if (p.real() >= -kPoleTolerance) return false;
  return true;
}

std::string TransferFunction::to_string() const {
  return "(" + poly_text(num_) + ")/(" + poly_text(den_) + ")";
}

TransferFunction tf_add(const TransferFunction& f, const TransferFunction& g) {
  return TransferFunction(poly_add(poly_mul(f.num(), g.den()), poly_mul(g.num(), f.den())),
                          poly_mul(f.den(), g.den()));
}

TransferFunction tf_sub(const TransferFunction& f, const TransferFunction& g) { return tf_add(f, tf_scale(g, -1.0)); }

TransferFunction tf_mul(const TransferFunction& f, const TransferFunction& g) {
  return TransferFunction(poly_mul(f.num(), g.num()), poly_mul(f.den(), g.den()));
}

TransferFunction tf_inverse(const TransferFunction& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroInverse, "tf_inverse: zero transfer function");
  return TransferFunction(f.den(), f.num());
}

TransferFunction tf_scale(const TransferFunction& f, double alpha) {
  return TransferFunction(poly_scale(f.num(), alpha), f.den());
}

TransferFunction tf_add(const TransferFunction& f, double alpha) {
  return tf_add(f, TransferFunction::constant(alpha));
}

}  // namespace srg::lti
