#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lwrobust {

// Library-wide error type for contract violations and I/O failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class CorpusMode { feature, token };

// One instance: multi-hot label set plus either a dense feature vector or a
// token sequence, depending on the corpus-wide mode.
struct Document {
  std::string id;
  double time = 0.0;  // arbitrary units, monotone with publication date
  std::vector<int> labels;
  std::vector<double> features;
  std::vector<int> tokens;
};

struct Corpus {
  std::vector<Document> documents;
  int num_labels = 0;
  CorpusMode mode = CorpusMode::feature;
  std::vector<std::string> label_names;  // optional, empty if absent

  int feature_dim() const {
    return documents.empty() ? 0 : static_cast<int>(documents.front().features.size());
  }
  // Checks the corpus invariants: nonempty, labels nonempty and < L,
  // exactly one of features/tokens per mode. Throws Error on violation.
  void validate() const;
};

// Disjoint index lists into a corpus; each split is nonempty.
struct SplitSet {
  std::vector<int> train;
  std::vector<int> dev;
  std::vector<int> test;
};

struct LabelDistribution {
  std::vector<std::int64_t> counts;  // length L
  std::vector<double> probs;         // counts normalized by total assignments
};

using Fractions = std::array<double, 3>;

// Sorts documents ascending by time (ties by id), then cuts at the
// cumulative fraction boundaries; any rounding slack stays inside the
// boundaries so the stated example sizes hold exactly.
SplitSet chronological_split(const Corpus& corpus, const Fractions& fractions);

// Seeded uniform permutation, then the same fraction cut. Identical seed
// gives an identical split.
SplitSet random_split(const Corpus& corpus, const Fractions& fractions,
                      std::uint64_t seed);

LabelDistribution label_distribution(const Corpus& corpus,
                                     const std::vector<int>& indices);

// Head = the ceil(L/2) most frequent labels by train counts (ties broken by
// label index), tail = the rest.
std::pair<std::vector<int>, std::vector<int>> head_tail_partition(
    const LabelDistribution& train_dist);

// Line-delimited corpus format: first line is a header object declaring
// "L", "mode" and optionally "label_names"; every following line is one
// document with "id", "time", "labels" and "features" or "tokens".
Corpus read_corpus_jsonl(const std::string& path);
void write_corpus_jsonl(const Corpus& corpus, const std::string& path);

}  // namespace lwrobust
