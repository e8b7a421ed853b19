#pragma once

#include <string>
#include <vector>

#include "srgkit/lti/polynomial.hpp"

namespace srg::lti {

inline constexpr double kCancellationTolerance = 1e-8;
inline constexpr double kPoleTolerance = 1e-9;
inline constexpr int kDefaultDegreeCap = 64;

class TransferFunction {
 public:
  TransferFunction() : num_{0.0}, den_{1.0} {}
  // Cancels common roots and normalizes the leading denominator coefficient.
  TransferFunction(Poly num, Poly den, std::string label = {}, int degree_cap = kDefaultDegreeCap);
  static TransferFunction constant(double c);
  static TransferFunction s();

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  // Near-cancellations that were left in place.
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

  Complex operator()(Complex s) const;
  Complex at_infinity() const;  // limit as |s| grows; infinite if improper

  int num_degree() const { return poly_degree(num_); }
  int den_degree() const { return poly_degree(den_); }
  bool is_zero() const { return poly_is_zero(num_); }
  bool is_proper() const { return num_degree() <= den_degree(); }
  bool is_constant() const { return den_degree() == 0 && num_degree() <= 0; }

  std::vector<Complex> poles() const;
  std::vector<Complex> zeros() const;
  int unstable_pole_count() const;
  // Poles with |Re p| below the classification tolerance.
  std::vector<Complex> imaginary_axis_poles() const;
  bool is_stable() const;

  std::string to_string() const;

 private:
  void reduce(int degree_cap);
  Poly num_, den_;
  std::string label_;
  std::vector<std::string> diagnostics_;
};

TransferFunction tf_add(const TransferFunction& f, const TransferFunction& g);
TransferFunction tf_sub(const TransferFunction& f, const TransferFunction& g);
TransferFunction tf_mul(const TransferFunction& f, const TransferFunction& g);
TransferFunction tf_inverse(const TransferFunction& f);
TransferFunction tf_scale(const TransferFunction& f, double alpha);
TransferFunction tf_add(const TransferFunction& f, double alpha);

// Ratio of polynomials in s, e.g. "(3)/((s-2)*(s/10+1))".
TransferFunction parse_tf(const std::string& text);

}  // namespace srg::lti
