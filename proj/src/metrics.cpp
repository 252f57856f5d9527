#include "lwrobust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace lwrobust {

void Predictions::validate() const {
  if (scores.rows < 1) throw Error("predictions need at least one document");
  if (!scores.same_shape(gold)) throw Error("scores/gold shape mismatch");
  if (threshold <= 0.0 || threshold >= 1.0)
    throw Error("threshold must lie in (0, 1)");
  for (double s : scores.a)
    if (s < 0.0 || s > 1.0) throw Error("scores must lie in [0, 1]");
}

namespace {

struct Confusion {
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
};

double f1_from(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
  const std::int64_t denom = 2 * tp + fp + fn;
  if (denom == 0) return 0.0;  // no gold positives and no predictions
  return 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

std::vector<Confusion> per_class_confusion(const Predictions& p,
                                           const std::vector<int>& classes) {
  std::vector<Confusion> conf(classes.size());
  for (int i = 0; i < p.num_docs(); ++i) {
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const int l = classes[c];
      const bool pred = p.scores(i, l) >= p.threshold;
      const bool gold = p.gold(i, l) != 0.0;
      if (pred && gold) ++conf[c].tp;
      else if (pred && !gold) ++conf[c].fp;
      else if (!pred && gold) ++conf[c].fn;
      else ++conf[c].tn;
    }
  }
  return conf;
}

std::vector<int> all_classes(int L) {
  std::vector<int> v(L);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

F1Result f1_on_columns(const Predictions& p, const std::vector<int>& classes) {
  const auto conf = per_class_confusion(p, classes);
  F1Result r;
  std::int64_t tp = 0, fp = 0, fn = 0;
  r.per_class.resize(classes.size());
  double macro_sum = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    tp += conf[c].tp;
    fp += conf[c].fp;
    fn += conf[c].fn;
    r.per_class[c] = f1_from(conf[c].tp, conf[c].fp, conf[c].fn);
    macro_sum += r.per_class[c];
  }
  r.micro = f1_from(tp, fp, fn);
  r.macro = classes.empty() ? 0.0 : macro_sum / static_cast<double>(classes.size());
  return r;
}

MeanRpResult mean_rp_on_columns(const Predictions& p,
                                const std::vector<int>& classes) {
  MeanRpResult res;
  double sum = 0.0;
  int scored = 0;
  std::vector<int> order(classes.size());
  for (int i = 0; i < p.num_docs(); ++i) {
    int R = 0;
    for (int l : classes)
      if (p.gold(i, l) != 0.0) ++R;
    if (R == 0) {
      ++res.skipped;
      continue;
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      const double sa = p.scores(i, classes[a]);
      const double sb = p.scores(i, classes[b]);
      if (sa != sb) return sa > sb;
      return classes[a] < classes[b];  // tie by ascending label index
    });
    int hits = 0;
    for (int k = 0; k < R; ++k)
      if (p.gold(i, classes[order[k]]) != 0.0) ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(R);
    ++scored;
  }
  if (scored == 0) throw Error("mean_r_precision: all documents skipped");
  res.value = sum / static_cast<double>(scored);
  return res;
}

}  // namespace

F1Result f1_scores(const Predictions& p) {
  p.validate();
  return f1_on_columns(p, all_classes(p.num_labels()));
}

MeanRpResult mean_r_precision(const Predictions& p) {
  p.validate();
  return mean_rp_on_columns(p, all_classes(p.num_labels()));
}

double wasserstein_label_shift_ordered(const LabelDistribution& p,
                                       const LabelDistribution& q,
                                       const std::vector<int>& order) {
  if (p.probs.size() != q.probs.size())
    throw Error("wasserstein_label_shift: length mismatch");
  double cdf_p = 0.0, cdf_q = 0.0, w1 = 0.0;
  for (int l : order) {
    cdf_p += p.probs[l];
    cdf_q += q.probs[l];
    w1 += std::abs(cdf_p - cdf_q);
  }
  return w1;
}

double wasserstein_label_shift(const LabelDistribution& p,
                               const LabelDistribution& q) {
  if (p.probs.size() != q.probs.size())
    throw Error("wasserstein_label_shift: length mismatch");
  std::vector<int> order(p.counts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (p.counts[a] != p.counts[b]) return p.counts[a] > p.counts[b];
    return a < b;
  });
  return wasserstein_label_shift_ordered(p, q, order);
}

CevResult cev(const Predictions& a, const Predictions& b) {
  a.validate();
  b.validate();
  if (!a.gold.same_shape(b.gold)) throw Error("cev: shape mismatch");
  for (int i = 0; i < a.gold.size(); ++i)
    if (a.gold.a[i] != b.gold.a[i]) throw Error("cev: gold labels differ");

  const auto classes = all_classes(a.num_labels());
  const auto conf_a = per_class_confusion(a, classes);
  const auto conf_b = per_class_confusion(b, classes);

  std::vector<std::pair<double, double>> deltas;
  CevResult res;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto rate = [](std::int64_t num, std::int64_t denom) {
      return denom == 0 ? -1.0 : static_cast<double>(num) / static_cast<double>(denom);
    };
    const double fpr_b = rate(conf_b[c].fp, conf_b[c].fp + conf_b[c].tn);
    const double fnr_b = rate(conf_b[c].fn, conf_b[c].fn + conf_b[c].tp);
    if (fpr_b <= 0.0 || fnr_b <= 0.0) {
      ++res.excluded_classes;
      continue;
    }
    const double fpr_a = rate(conf_a[c].fp, conf_a[c].fp + conf_a[c].tn);
    const double fnr_a = rate(conf_a[c].fn, conf_a[c].fn + conf_a[c].tp);
    deltas.emplace_back((fpr_a - fpr_b) / fpr_b, (fnr_a - fnr_b) / fnr_b);
  }
  if (deltas.empty()) throw Error("cev: no includable classes");
  res.included_classes = static_cast<int>(deltas.size());
  double mx = 0.0, my = 0.0;
  for (const auto& d : deltas) {
    mx += d.first;
    my += d.second;
  }
  mx /= static_cast<double>(deltas.size());
  my /= static_cast<double>(deltas.size());
  double acc = 0.0;
  for (const auto& d : deltas) {
    const double dx = d.first - mx;
    const double dy = d.second - my;
    acc += dx * dx + dy * dy;
  }
  res.raw = acc / static_cast<double>(deltas.size());
  return res;
}

std::vector<double> normalize_cev(const std::vector<double>& raws) {
  if (raws.empty()) return {};
  const double lo = *std::min_element(raws.begin(), raws.end());
  const double hi = *std::max_element(raws.begin(), raws.end());
  std::vector<double> out(raws.size(), 0.0);
  if (hi > lo)
    for (std::size_t i = 0; i < raws.size(); ++i) out[i] = (raws[i] - lo) / (hi - lo);
  return out;
}

std::pair<SubReport, SubReport> head_tail_report(const Predictions& p,
                                                 const std::vector<int>& head,
                                                 const std::vector<int>& tail) {
  p.validate();
  std::vector<bool> seen(p.num_labels(), false);
  for (int l : head) {
    if (l < 0 || l >= p.num_labels() || seen[l])
      throw Error("head_tail_report: invalid or overlapping head labels");
    seen[l] = true;
  }
  for (int l : tail) {
    if (l < 0 || l >= p.num_labels() || seen[l])
      throw Error("head_tail_report: overlap between head and tail");
    seen[l] = true;
  }
  for (bool s : seen)
    if (!s) throw Error("head_tail_report: head and tail must cover all labels");

  const auto make = [&](const std::vector<int>& classes) {
    SubReport r;
    const F1Result f1 = f1_on_columns(p, classes);
    r.micro_f1 = f1.micro;
    r.macro_f1 = f1.macro;
    try {
      const MeanRpResult rp = mean_rp_on_columns(p, classes);
      r.mean_rp = rp.value;
      r.mrp_skipped = rp.skipped;
    } catch (const Error&) {
      // no document has a gold label in this subset
      r.mean_rp = 0.0;
      r.mrp_skipped = p.num_docs();
    }
    return r;
  };
  return {make(head), make(tail)};
}

MetricsReport full_report(const Predictions& p, const std::vector<int>& head,
                          const std::vector<int>& tail) {
  MetricsReport r;
  const F1Result f1 = f1_scores(p);
  r.micro_f1 = f1.micro;
  r.macro_f1 = f1.macro;
  r.per_class_f1 = f1.per_class;
  const MeanRpResult rp = mean_r_precision(p);
  r.mean_rp = rp.value;
  r.mrp_skipped = rp.skipped;
  const auto [h, t] = head_tail_report(p, head, tail);
  r.head = h;
  r.tail = t;
  return r;
}

std::string report_to_kv_text(const MetricsReport& r, const std::string& name) {
  std::ostringstream os;
  char buf[64];
  const auto kv = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    os << name << "." << key << " = " << buf << '\n';
  };
  kv("micro_f1", r.micro_f1);
  kv("macro_f1", r.macro_f1);
  kv("mean_rp", r.mean_rp);
  os << name << ".mrp_skipped = " << r.mrp_skipped << '\n';
  kv("head.micro_f1", r.head.micro_f1);
  kv("head.macro_f1", r.head.macro_f1);
  kv("head.mean_rp", r.head.mean_rp);
  kv("tail.micro_f1", r.tail.micro_f1);
  kv("tail.macro_f1", r.tail.macro_f1);
  kv("tail.mean_rp", r.tail.mean_rp);
  if (r.shift) kv("shift.wasserstein", *r.shift);
  return os.str();
}

}  // namespace lwrobust
