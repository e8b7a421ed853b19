#pragma once

#include <string>
#include <vector>

#include "srgkit/lti/transfer_function.hpp"

namespace srg::lti {

struct FrequencyGrid {
  double w_min = 1e-3;
  double w_max = 1e4;
  int points_per_sign = 600;
  double arc_radius = 1e7;       // radius of the closing arc
  double indentation = 1e-6;     // radius of detours around imaginary-axis poles
  double relative_spacing = 0.01;  // image spacing target, fraction of the curve diameter
  double chart_spacing = 1e-3;     // spacing target in the compactified chart
  int max_samples = 400000;
};

// Image of the D-contour: up the imaginary axis from -jR to jR (with right
// detours around imaginary-axis poles), then clockwise along the arc.
struct NyquistCurve {
  std::vector<Complex> samples;
  std::vector<Complex> contour;      // the s values
  std::vector<double> frequencies;   // Im s along the contour
  std::vector<double> indentations;  // imaginary-axis pole frequencies
  bool closed = true;
  bool reaches_infinity = false;     // improper or pole on the imaginary axis
  double finite_diameter = 0.0;

  // Samples with s on the imaginary axis and w >= 0, ordered by frequency.
  std::vector<Complex> positive_branch() const;
};

NyquistCurve nyquist_curve(const TransferFunction& f, const FrequencyGrid& grid = {});

// Clockwise encirclements of z.
int winding_number(const NyquistCurve& c, Complex z);
// Same, without the integrality check; fractional part reflects conditioning.
double winding_number_raw(const NyquistCurve& c, Complex z);

struct NyquistVerdict {
  int n_p = 0;
  int n_n = 0;
  int n_z = 0;
  bool stable() const { return n_z == 0; }
};

NyquistVerdict nyquist_criterion(const TransferFunction& L, const FrequencyGrid& grid = {});

std::string nyquist_csv(const NyquistCurve& c);

}  // namespace srg::lti
