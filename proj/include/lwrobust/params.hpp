#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lwrobust/corpus.hpp"

namespace lwrobust {

struct ParamSlice {
  std::string name;
  int offset = 0;
  int rows = 0;
  int cols = 0;
  int size() const { return rows * cols; }
};

// Named slices tiling a flat parameter vector exactly, without overlap.
class ParamLayout {
 public:
  void add(const std::string& name, int rows, int cols) {
    if (rows <= 0 || cols <= 0) throw Error("param slice '" + name + "': bad shape");
    for (const ParamSlice& s : slices_)
      if (s.name == name) throw Error("duplicate param slice '" + name + "'");
    slices_.push_back({name, total_, rows, cols});
    total_ += rows * cols;
  }

  const ParamSlice& slice(std::string_view name) const {
    for (const ParamSlice& s : slices_)
      if (s.name == name) return s;
    throw Error("unknown param slice '" + std::string(name) + "'");
  }

  int total() const { return total_; }
  const std::vector<ParamSlice>& slices() const { return slices_; }

 private:
  std::vector<ParamSlice> slices_;
  int total_ = 0;
};

struct Params {
  ParamLayout layout;
  std::vector<double> values;
};

inline Params make_params(ParamLayout layout) {
  Params p;
  p.values.assign(layout.total(), 0.0);
  p.layout = std::move(layout);
  return p;
}

}  // namespace lwrobust
