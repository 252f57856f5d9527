#pragma once

#include <cstdint>
#include <vector>

#include "lwrobust/corpus.hpp"

namespace lwrobust {

// Synthetic multi-label corpus with a power-law label distribution and a
// tunable rank-swap drift between t=0 and t=1.
struct GenConfig {
  int num_labels = 8;       // L
  int feature_dim = 16;     // d, feature mode
  int vocab_size = 100;     // V, token mode
  int doc_tokens = 12;      // T, token mode
  int num_docs = 100;       // N
  double zipf_s = 1.0;      // power-law exponent >= 0
  double drift_rho = 0.0;   // fraction of labels with permuted prevalence rank
  double label_rate = 2.0;  // expected labels per document
  double noise_sigma = 0.1; // feature noise scale
  std::uint64_t seed = 0;
  CorpusMode mode = CorpusMode::feature;

  void validate() const;
};

struct DriftSchedule {
  std::vector<double> base_prev;  // prevalence at t=0, sums to label_rate
  std::vector<double> end_prev;   // rank-permuted copy at t=1
};

// Linear interpolation between the endpoint prevalence vectors; the sum is
// preserved for every t.
std::vector<double> drift_prevalence(const DriftSchedule& schedule, double t);

// The schedule generate_corpus uses for a config (exposed for tests).
DriftSchedule make_drift_schedule(const GenConfig& cfg);

// Deterministic generation: identical seed, identical corpus bytes.
Corpus generate_corpus(const GenConfig& cfg);

struct ShiftMultiplier {
  double value = 0.0;
  bool denominator_zero = false;  // value is +infinity when set
};

// Wasserstein train/test label shift under a chronological split divided by
// the same quantity under a random split (seed 0).
ShiftMultiplier shift_multiplier(const Corpus& corpus, const Fractions& fractions);

}  // namespace lwrobust
