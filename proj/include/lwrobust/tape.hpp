#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lwrobust/mat.hpp"
#include "lwrobust/params.hpp"

namespace lwrobust {

// Reverse-mode differentiation over dense matrices. A Tape records one
// forward evaluation eagerly (values are available as soon as a node is
// created); backward() then visits the nodes once in reverse creation
// order, which is a reverse topological order because an op can only
// reference earlier nodes. Evaluation order is fixed, so identical inputs
// produce bit-identical values and gradients.
//
// Every node's value is checked for non-finite entries on creation and the
// offending node is named in the error.
class Tape {
 public:
  using Var = int;

  // Leaves.
  Var constant(Mat m);
  Var scalar_const(double v) { return constant(Mat::scalar(v)); }
  // Copies the named slice of p into a leaf whose gradient is written back
  // by param_gradient(). One leaf per slice; repeated calls return it.
  Var param(const Params& p, std::string_view slice);

  // C = op(a) * op(b) with optional transposes.
  Var matmul(Var a, Var b, bool trans_a = false, bool trans_b = false);
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);          // elementwise
  Var scale(Var a, double c);     // scalar constant multiply
  Var sigmoid(Var a);
  Var relu(Var a);
  Var log(Var a);
  Var exp(Var a);
  Var square(Var a);
  Var clamp(Var a, double lo, double hi);  // zero gradient outside (lo, hi)
  Var sum(Var a);        // 1x1
  Var mean(Var a);       // 1x1
  Var variance(Var a);   // population variance over all entries, 1x1
  Var sum_rows(Var a);   // r x c -> r x 1
  Var mean_rows(Var a);  // r x c -> r x 1
  Var mean_cols(Var a);  // r x c -> 1 x c
  Var softmax_cols(Var a);  // softmax over rows, independently per column
  Var dot(Var a, Var b);    // 1x1, same-shape inputs
  // Sample covariance of the rows of a (n x d -> d x d), 1/(n-1)
  // normalization; the zero matrix when n < 2.
  Var covariance(Var a);
  Var gather_rows(Var a, std::vector<int> idx);
  Var repeat_rows(Var a, int n);           // 1 x c -> n x c
  Var broadcast(Var a, int rows, int cols);  // 1 x 1 -> rows x cols
  Var transpose(Var a);
  Var vstack(const std::vector<Var>& parts);  // concatenate rows

  const Mat& val(Var v) const { return nodes_[v].val; }
  double scalar_value(Var v) const;

  // Accumulates d(loss)/d(node) for every node; loss must be 1x1.
  void backward(Var loss);
  const Mat& grad(Var v) const;

  // Flat gradient with respect to the Params all param() leaves came from.
  std::vector<double> param_gradient() const;

  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  enum class Op {
    constant, param, matmul, add, sub, mul, scale, sigmoid, relu, log, exp,
    square, clamp, sum, mean, variance, sum_rows, mean_rows, mean_cols,
    softmax_cols, dot, covariance, gather_rows, repeat_rows, broadcast,
    transpose, vstack,
  };

  struct Node {
    Op op;
    Mat val;
    Mat grad;
    int a = -1;
    int b = -1;
    double c0 = 0.0;
    double c1 = 0.0;
    bool ta = false;
    bool tb = false;
    std::vector<int> idx;   // gather indices or vstack arguments
    int param_offset = -1;  // flat offset for param leaves
  };

  Var push(Node n);
  void check_finite(const Node& n, Var id) const;
  const Node& node(Var v) const { return nodes_[v]; }
  static const char* op_name(Op op);
  void backward_node(int i);

  std::vector<Node> nodes_;
  int param_total_ = -1;
  std::vector<std::pair<int, int>> param_leaves_;  // (node, flat offset)
  bool grads_ready_ = false;
};

struct GradResult {
  double value = 0.0;
  std::vector<double> gradient;
};

using TapeFn = std::function<Tape::Var(Tape&, const Params&)>;

// Value and flat gradient of a scalar tape function.
GradResult grad(const TapeFn& f, const Params& p);

// Central finite differences against the analytic gradient. Relative error
// per coordinate uses denominator max(|analytic|, |numeric|, 1e-8).
double finite_difference_check(const TapeFn& f, const Params& p, double step);

}  // namespace lwrobust
