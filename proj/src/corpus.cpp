#include "lwrobust/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "json.hpp"
#include "lwrobust/rng.hpp"

namespace lwrobust {

using nlohmann::json;

void Corpus::validate() const {
  if (documents.empty()) throw Error("corpus has no documents");
  if (num_labels <= 0) throw Error("corpus num_labels must be positive");
  for (const Document& d : documents) {
    if (d.labels.empty()) throw Error("document '" + d.id + "' has no labels");
    for (int l : d.labels) {
      if (l < 0 || l >= num_labels)
        throw Error("document '" + d.id + "' has label index " +
                    std::to_string(l) + " outside [0, " +
                    std::to_string(num_labels) + ")");
    }
    const bool has_feat = !d.features.empty();
    const bool has_tok = !d.tokens.empty();
    if (mode == CorpusMode::feature && (!has_feat || has_tok))
      throw Error("document '" + d.id + "' does not match feature mode");
    if (mode == CorpusMode::token && (!has_tok || has_feat))
      throw Error("document '" + d.id + "' does not match token mode");
  }
  if (mode == CorpusMode::feature) {
    const std::size_t d0 = documents.front().features.size();
    for (const Document& d : documents)
      if (d.features.size() != d0)
        throw Error("inconsistent feature dimension at document '" + d.id + "'");
  }
}

namespace {

void check_fractions(const Fractions& f) {
  double sum = 0.0;
  for (double x : f) {
    if (x <= 0.0) throw Error("split fractions must be positive");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("split fractions must sum to 1");
}

// Cut a permutation at the cumulative fraction boundaries. The epsilon
// absorbs floating-point slack such as 36500 * (20 / 36.5) landing a hair
// below 20000.
SplitSet cut_by_fractions(std::vector<int> order, const Fractions& f) {
  const std::size_t n = order.size();
  const auto bound = [&](double cum) {
    return static_cast<std::size_t>(std::floor(cum * static_cast<double>(n) + 1e-9));
  };
  const std::size_t b1 = bound(f[0]);
  const std::size_t b2 = bound(f[0] + f[1]);
  if (b1 == 0 || b2 <= b1 || b2 >= n)
    throw Error("split fractions leave an empty train, dev or test set");
  SplitSet s;
  s.train.assign(order.begin(), order.begin() + b1);
  s.dev.assign(order.begin() + b1, order.begin() + b2);
  s.test.assign(order.begin() + b2, order.end());
  return s;
}

}  // namespace

SplitSet chronological_split(const Corpus& corpus, const Fractions& fractions) {
  if (corpus.documents.empty()) throw Error("cannot split an empty corpus");
  check_fractions(fractions);
  std::vector<int> order(corpus.documents.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const Document& da = corpus.documents[a];
    const Document& db = corpus.documents[b];
    if (da.time != db.time) return da.time < db.time;
    return da.id < db.id;  // deterministic tie rule
  });
  return cut_by_fractions(std::move(order), fractions);
}

SplitSet random_split(const Corpus& corpus, const Fractions& fractions,
                      std::uint64_t seed) {
  if (corpus.documents.empty()) throw Error("cannot split an empty corpus");
  check_fractions(fractions);
  std::vector<int> order(corpus.documents.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, "random_split"));
  rng.shuffle(order);
  return cut_by_fractions(std::move(order), fractions);
}

LabelDistribution label_distribution(const Corpus& corpus,
                                     const std::vector<int>& indices) {
  if (indices.empty()) throw Error("label_distribution: empty index list");
  LabelDistribution dist;
  dist.counts.assign(corpus.num_labels, 0);
  std::int64_t total = 0;
  for (int i : indices) {
    if (i < 0 || i >= static_cast<int>(corpus.documents.size()))
      throw Error("label_distribution: index out of range");
    for (int l : corpus.documents[i].labels) {
      ++dist.counts[l];
      ++total;
    }
  }
  dist.probs.assign(corpus.num_labels, 0.0);
  for (int l = 0; l < corpus.num_labels; ++l)
    dist.probs[l] = static_cast<double>(dist.counts[l]) / static_cast<double>(total);
  return dist;
}

std::pair<std::vector<int>, std::vector<int>> head_tail_partition(
    const LabelDistribution& train_dist) {
  const int L = static_cast<int>(train_dist.counts.size());
  if (L < 2) throw Error("head_tail_partition needs at least 2 labels");
  std::vector<int> order(L);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (train_dist.counts[a] != train_dist.counts[b])
      return train_dist.counts[a] > train_dist.counts[b];
    return a < b;
  });
  const int head_size = (L + 1) / 2;
  std::vector<int> head(order.begin(), order.begin() + head_size);
  std::vector<int> tail(order.begin() + head_size, order.end());
  return {head, tail};
}

namespace {

json parse_line(const std::string& line, std::size_t lineno) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error("corpus line " + std::to_string(lineno) + ": malformed record");
  return j;
}

}  // namespace

Corpus read_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file: " + path);
  std::string line;
  std::size_t lineno = 0;
  Corpus corpus;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j = parse_line(line, lineno);
    if (!header_seen) {
      if (!j.contains("L") || !j.contains("mode"))
        throw Error("corpus line " + std::to_string(lineno) +
                    ": header must declare L and mode");
      corpus.num_labels = j.at("L").get<int>();
      const std::string mode = j.at("mode").get<std::string>();
      if (mode == "feature") corpus.mode = CorpusMode::feature;
      else if (mode == "token") corpus.mode = CorpusMode::token;
      else throw Error("corpus line " + std::to_string(lineno) +
                       ": unknown mode '" + mode + "'");
      if (j.contains("label_names"))
        corpus.label_names = j.at("label_names").get<std::vector<std::string>>();
      header_seen = true;
      continue;
    }
    Document d;
    try {
      d.id = j.at("id").get<std::string>();
      d.time = j.at("time").get<double>();
      d.labels = j.at("labels").get<std::vector<int>>();
      if (corpus.mode == CorpusMode::feature)
        d.features = j.at("features").get<std::vector<double>>();
      else
        d.tokens = j.at("tokens").get<std::vector<int>>();
    } catch (const json::exception& e) {
      throw Error("corpus line " + std::to_string(lineno) + ": " + e.what());
    }
    corpus.documents.push_back(std::move(d));
  }
  if (!header_seen) throw Error("corpus file has no header: " + path);
  corpus.validate();
  return corpus;
}

void write_corpus_jsonl(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus file: " + path);
  json header;
  header["L"] = corpus.num_labels;
  header["mode"] = corpus.mode == CorpusMode::feature ? "feature" : "token";
  if (!corpus.label_names.empty()) header["label_names"] = corpus.label_names;
  out << header.dump() << '\n';
  for (const Document& d : corpus.documents) {
    json j;
    j["id"] = d.id;
    j["time"] = d.time;
    j["labels"] = d.labels;
    if (corpus.mode == CorpusMode::feature)
      j["features"] = d.features;
    else
      j["tokens"] = d.tokens;
    out << j.dump() << '\n';
  }
  if (!out) throw Error("failed writing corpus file: " + path);
}

}  // namespace lwrobust
