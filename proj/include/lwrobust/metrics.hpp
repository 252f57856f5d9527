#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lwrobust/corpus.hpp"
#include "lwrobust/mat.hpp"

namespace lwrobust {

// Sigmoid scores and gold assignments for a set of documents.
struct Predictions {
  Mat scores;            // N x L, values in [0, 1]
  Mat gold;              // N x L multi-hot
  double threshold = 0.5;

  void validate() const;
  int num_docs() const { return scores.rows; }
  int num_labels() const { return scores.cols; }
};

struct F1Result {
  double micro = 0.0;
  double macro = 0.0;
  std::vector<double> per_class;
};

struct SubReport {
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;
  double mean_rp = 0.0;
  int mrp_skipped = 0;
};

struct MetricsReport {
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;
  double mean_rp = 0.0;
  int mrp_skipped = 0;
  std::vector<double> per_class_f1;
  SubReport head;
  SubReport tail;
  std::optional<double> shift;  // Wasserstein train/test label shift
};

// Binarizes at the threshold (score >= threshold is positive). Per-class F1
// uses the 0/0 = 0 convention; macro averages over all L classes.
F1Result f1_scores(const Predictions& p);

struct MeanRpResult {
  double value = 0.0;
  int skipped = 0;  // documents with no gold labels
};

// Per document: R = number of gold labels, rank labels by descending score
// (ties by ascending label index), precision of the top R.
MeanRpResult mean_r_precision(const Predictions& p);

// W1 between two label distributions over the rank order induced by the
// first argument's counts (descending, ties by index). The ground metric is
// unit spacing along that order.
double wasserstein_label_shift(const LabelDistribution& p,
                               const LabelDistribution& q);
// Same, with an explicit shared ordering.
double wasserstein_label_shift_ordered(const LabelDistribution& p,
                                       const LabelDistribution& q,
                                       const std::vector<int>& order);

struct CevResult {
  double raw = 0.0;
  int included_classes = 0;
  int excluded_classes = 0;
  // The formula is reconstructed from the metric's original definition and
  // tagged as such wherever the value is reported.
  static constexpr const char* provenance = "reconstructed";
};

// Combined Error Variance of predictions A relative to baseline B: variance
// of the per-class relative changes in (FPR, FNR). Classes where the
// baseline's FPR or FNR is zero or undefined are excluded.
CevResult cev(const Predictions& a, const Predictions& b);

// Min-max rescale of raw CEV values across a compared set to [0, 1].
std::vector<double> normalize_cev(const std::vector<double>& raws);

// f1_scores and mean_r_precision restricted to the given label columns.
std::pair<SubReport, SubReport> head_tail_report(const Predictions& p,
                                                 const std::vector<int>& head,
                                                 const std::vector<int>& tail);

// Full report including head/tail sub-reports.
MetricsReport full_report(const Predictions& p, const std::vector<int>& head,
                          const std::vector<int>& tail);

// Key/value text serialization of a report.
std::string report_to_kv_text(const MetricsReport& r, const std::string& name);

}  // namespace lwrobust
