#include <cmath>
#include <string>

#include "wmlab/common/error.hpp"
#include "wmlab/lm/model.hpp"

namespace wmlab::lm {

void validate_distribution(std::span<const double> probs, std::size_t vocab_size, double tolerance) {
  if (probs.size() != vocab_size) {
    throw InvalidDistribution("distribution has " + std::to_string(probs.size()) +
                              " entries, vocabulary has " + std::to_string(vocab_size));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p) || p < 0.0) {
      throw InvalidDistribution("entry " + std::to_string(i) + " is negative or not finite");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tolerance) {
    throw InvalidDistribution("distribution sums to " + std::to_string(sum));
  }
}

}  // namespace wmlab::lm
