#pragma once

#include <cstdint>
#include <string>

namespace props {

struct Outcome {
  std::string name;
  int trials = 0;
  int failures = 0;
  int skipped = 0;
  double worst = 0.0;  // worst observed statistic, meaning depends on the suite
  std::string detail;  // first failure
  bool passed() const { return trials > 0 && failures == 0; }
};

// Radius of the LTI region against a frequency-sweep peak, 1% relative.
Outcome radius_equals_hinf(int systems, std::uint64_t seed);
// Finite extended-region radius exactly for stable systems; half the draws are unstable.
Outcome bounded_iff_stable(int systems, std::uint64_t seed);
// Empirical SRG points from simulated input pairs lie in the computed region.
Outcome empirical_containment(int systems, int samples_per_system, std::uint64_t seed);
// Scaling, inversion, shift, sum and product relations on random LTI pairs.
Outcome set_relations(int pairs, std::uint64_t seed);
// Simulated gains of mixed LTI/static words never exceed the composed bound (2% slack).
Outcome word_gains(int words, std::uint64_t seed);
// Whenever the classical circle criterion certifies with margin, so does the region test.
Outcome circle_sweep(int cases, std::uint64_t seed, double margin_threshold = 0.02);

}  // namespace props
