#include "lwrobust/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lwrobust/metrics.hpp"
#include "lwrobust/rng.hpp"

namespace lwrobust {

void GenConfig::validate() const {
  if (num_labels <= 0) throw Error("gen config: num_labels must be positive");
  if (num_docs <= 1) throw Error("gen config: need at least 2 documents");
  if (zipf_s < 0.0) throw Error("gen config: zipf_s must be >= 0");
  if (drift_rho < 0.0 || drift_rho > 1.0)
    throw Error("gen config: drift_rho must lie in [0, 1]");
  if (label_rate <= 0.0) throw Error("gen config: label_rate must be positive");
  if (noise_sigma < 0.0) throw Error("gen config: noise_sigma must be >= 0");
  if (mode == CorpusMode::feature) {
    if (feature_dim <= 0) throw Error("gen config: feature_dim must be positive");
  } else {
    if (vocab_size <= 0 || doc_tokens <= 0)
      throw Error("gen config: vocab_size and doc_tokens must be positive");
  }
  const long swapped = std::lround(drift_rho * num_labels);
  if (swapped % 2 != 0)
    throw Error("gen config: drift_rho * L must round to an even count, got " +
                std::to_string(swapped));
}

std::vector<double> drift_prevalence(const DriftSchedule& schedule, double t) {
  if (t < 0.0 || t > 1.0) throw Error("drift_prevalence: t must lie in [0, 1]");
  std::vector<double> out(schedule.base_prev.size());
  for (std::size_t l = 0; l < out.size(); ++l)
    out[l] = (1.0 - t) * schedule.base_prev[l] + t * schedule.end_prev[l];
  return out;
}

DriftSchedule make_drift_schedule(const GenConfig& cfg) {
  cfg.validate();
  const int L = cfg.num_labels;
  DriftSchedule s;
  s.base_prev.resize(L);
  double z = 0.0;
  for (int l = 0; l < L; ++l) {
    s.base_prev[l] = 1.0 / std::pow(static_cast<double>(l + 1), cfg.zipf_s);
    z += s.base_prev[l];
  }
  for (int l = 0; l < L; ++l) s.base_prev[l] *= cfg.label_rate / z;

  s.end_prev = s.base_prev;
  const int swapped = static_cast<int>(std::lround(cfg.drift_rho * L));
  if (swapped > 0) {
    // Pick the drifted subset from the seed, then pair its j-th most
    // frequent member with its j-th least frequent and swap their endpoint
    // prevalences.
    Rng rng(derive_seed(cfg.seed, "drift_pairs"));
    std::vector<int> all(L);
    std::iota(all.begin(), all.end(), 0);
    rng.shuffle(all);
    std::vector<int> chosen(all.begin(), all.begin() + swapped);
    std::stable_sort(chosen.begin(), chosen.end(), [&](int a, int b) {
      if (s.base_prev[a] != s.base_prev[b]) return s.base_prev[a] > s.base_prev[b];
      return a < b;
    });
    for (int j = 0; j < swapped / 2; ++j)
      std::swap(s.end_prev[chosen[j]], s.end_prev[chosen[swapped - 1 - j]]);
  }
  return s;
}

namespace {

std::vector<std::vector<double>> make_prototypes(const GenConfig& cfg, Rng& rng) {
  std::vector<std::vector<double>> protos(cfg.num_labels);
  for (auto& mu : protos) {
    mu.resize(cfg.feature_dim);
    double norm2 = 0.0;
    for (double& x : mu) {
      x = rng.normal();
      norm2 += x * x;
    }
    const double inv = 1.0 / std::max(std::sqrt(norm2), 1e-12);
    for (double& x : mu) x *= inv;
  }
  return protos;
}

// Token topics: 80% of the mass on a per-label block of the vocabulary,
// 20% uniform background.
struct TopicModel {
  int vocab = 0;
  int block = 0;

  int sample(int label, Rng& rng) const {
    if (rng.real01() < 0.8) {
      const int start = (label * block) % vocab;
      return (start + static_cast<int>(rng.below(block))) % vocab;
    }
    return static_cast<int>(rng.below(vocab));
  }
};

}  // namespace

Corpus generate_corpus(const GenConfig& cfg) {
  cfg.validate();
  const DriftSchedule schedule = make_drift_schedule(cfg);
  const int L = cfg.num_labels;
  const int N = cfg.num_docs;

  Rng rng(derive_seed(cfg.seed, "corpus"));
  std::vector<std::vector<double>> protos;
  TopicModel topics;
  if (cfg.mode == CorpusMode::feature) {
    protos = make_prototypes(cfg, rng);
  } else {
    topics.vocab = cfg.vocab_size;
    topics.block = std::max(1, cfg.vocab_size / L);
  }

  Corpus corpus;
  corpus.num_labels = L;
  corpus.mode = cfg.mode;
  corpus.documents.reserve(N);

  const int id_width = static_cast<int>(std::to_string(N - 1).size());
  for (int i = 0; i < N; ++i) {
    Document d;
    d.time = static_cast<double>(i) / static_cast<double>(N - 1);
    std::string num = std::to_string(i);
    d.id = "doc" + std::string(id_width - num.size(), '0') + num;

    const std::vector<double> prev = drift_prevalence(schedule, d.time);
    for (int attempt = 0; attempt < 100 && d.labels.empty(); ++attempt) {
      for (int l = 0; l < L; ++l)
        if (rng.real01() < std::min(1.0, prev[l])) d.labels.push_back(l);
    }
    if (d.labels.empty()) {
      const int best = static_cast<int>(
          std::max_element(prev.begin(), prev.end()) - prev.begin());
      d.labels.push_back(best);
    }

    if (cfg.mode == CorpusMode::feature) {
      d.features.assign(cfg.feature_dim, 0.0);
      for (int l : d.labels)
        for (int k = 0; k < cfg.feature_dim; ++k) d.features[k] += protos[l][k];
      const double inv = 1.0 / static_cast<double>(d.labels.size());
      for (int k = 0; k < cfg.feature_dim; ++k)
        d.features[k] = d.features[k] * inv + cfg.noise_sigma * rng.normal();
    } else {
      d.tokens.resize(cfg.doc_tokens);
      for (int t = 0; t < cfg.doc_tokens; ++t) {
        const int l = d.labels[rng.below(d.labels.size())];
        d.tokens[t] = topics.sample(l, rng);
      }
    }
    corpus.documents.push_back(std::move(d));
  }
  return corpus;
}

ShiftMultiplier shift_multiplier(const Corpus& corpus, const Fractions& fractions) {
  if (corpus.documents.size() < 10)
    throw Error("shift_multiplier needs at least 10 documents");
  const SplitSet chrono = chronological_split(corpus, fractions);
  const SplitSet random = random_split(corpus, fractions, 0);

  const double ws_chrono =
      wasserstein_label_shift(label_distribution(corpus, chrono.train),
                              label_distribution(corpus, chrono.test));
  const double ws_random =
      wasserstein_label_shift(label_distribution(corpus, random.train),
                              label_distribution(corpus, random.test));

  ShiftMultiplier out;
  if (ws_random == 0.0) {
    out.denominator_zero = true;
    out.value = std::numeric_limits<double>::infinity();
  } else {
    out.value = ws_chrono / ws_random;
  }
  return out;
}

}  // namespace lwrobust
