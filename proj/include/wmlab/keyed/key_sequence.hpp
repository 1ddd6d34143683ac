#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wmlab/keyed/prf.hpp"

namespace wmlab::keyed {

/// m rows of |V| keyed uniforms; row t drives position t of a generation.
class KeySequence {
 public:
  KeySequence(std::size_t rows, std::size_t vocab_size, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t vocab_size() const { return vocab_size_; }
  std::span<const double> row(std::size_t t) const {
    return std::span<const double>(values_).subspan(t * vocab_size_, vocab_size_);
  }
  double at(std::size_t t, TokenId id) const { return values_[t * vocab_size_ + id]; }

 private:
  std::size_t rows_;
  std::size_t vocab_size_;
  std::vector<double> values_;
};

/// Deterministic in the key: entry (t, v) = unit(prf('X', [t, v])).
KeySequence sample_key_sequence(const SecretKey& key, std::size_t m, std::size_t vocab_size);

}  // namespace wmlab::keyed
