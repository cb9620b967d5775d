// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textbench/classifiers.hpp"
#include "textbench/error.hpp"

namespace textbench::detail {

/// splitmix64: tiny platform-stable generator for shuffles and sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound must be > 0.
  std::size_t below(std::size_t bound) {
    return static_cast<std::size_t>(next() % bound);
  }

 private:
  std::uint64_t state_;
};

template <typename T>
void shuffle(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[rng.below(i)]);
  }
}

void validate_train_set(const TrainSet& data, const char* kind);

double sparse_dot(const SparseVector& row, const std::vector<double>& dense);

std::string fingerprint(const TrainSet& data,
                        const std::map<std::string, std::string>& hyper);

/// argmax with ties resolved toward the lower index.
std::size_t argmax_lowest(const std::vector<double>& scores);

int predict_tree_row(const TreeModel& tree, const SparseVector& row);

TreeModel build_cart_tree(const SparseMatrix& matrix,
                          const std::vector<int>& labels,
                          const std::vector<std::size_t>& rows,
                          std::size_t num_classes, std::size_t max_depth,
                          std::size_t min_leaf, double feature_fraction,
                          Rng& rng);

}  // namespace textbench::detail
