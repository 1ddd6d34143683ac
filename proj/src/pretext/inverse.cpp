#include "wmlab/pretext/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wmlab/common/error.hpp"
#include "wmlab/common/seed.hpp"

namespace wmlab::pretext {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double cell_score(double xi) { return -std::log1p(-xi); }

}  // namespace

TokenId inv_select(std::span<const double> key_row, std::span<const double> probs) {
  double best = kNegInf;
  std::size_t choice = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    const double score = std::log(key_row[i]) / probs[i];
    if (choice == probs.size() || score > best) {
      best = score;
      choice = i;
    }
  }
  if (choice == probs.size()) throw InvalidDistribution("distribution has no mass");
  return static_cast<TokenId>(choice);
}

double Inverse::gap_cost() { return std::log(2.0); }

Inverse::Inverse(InvParams params, std::size_t vocab_size)
    : params_(std::move(params)), vocab_size_(vocab_size) {
  if (params_.m == 0) throw ConfigError("inverse key length must be at least 1");
  if (params_.shifts == 0 || params_.shifts > params_.m) {
    throw ConfigError("inverse shift count must be in [1, m]");
  }
  if (params_.band == 0) throw ConfigError("alignment band must be at least 1");
  xi_ = std::make_shared<const keyed::KeySequence>(
      keyed::sample_key_sequence(params_.key, params_.m, vocab_size_));
  cell_costs_.resize(params_.m * vocab_size_);
  for (std::size_t t = 0; t < params_.m; ++t) {
    const auto row = xi_->row(t);
    for (std::size_t v = 0; v < vocab_size_; ++v) cell_costs_[t * vocab_size_ + v] = cell_score(row[v]);
  }
}

std::size_t Inverse::shift_for_seed(std::uint64_t seed) const {
  return static_cast<std::size_t>(derive_seed(seed, {"inverse-shift"}) % params_.shifts);
}

std::size_t Inverse::row_for(std::size_t shift, std::size_t position) const {
  return (shift * (params_.m / params_.shifts) + position) % params_.m;
}

TokenId Inverse::sample(std::size_t position, std::size_t shift, std::span<const double> probs) const {
  if (position >= params_.m) {
    throw KeyExhausted("position " + std::to_string(position) + " needs a key longer than m = " +
                       std::to_string(params_.m));
  }
  return inv_select(xi_->row(row_for(shift, position)), probs);
}

void Inverse::install(lm::GenerationConfig& cfg) const {
  const std::size_t shift = shift_for_seed(cfg.seed);
  cfg.sampler = [this, shift](std::span<const TokenId> generated, std::span<const double> probs,
                              std::mt19937_64&) { return sample(generated.size(), shift, probs); };
}

AlignmentScores Inverse::align(std::span<const TokenId> tokens, std::size_t shift) const {
  // Banded semi-global alignment of the text against key rows
  // shift*(m/shifts) + j. D[i][j]: best score with i tokens and j key rows
  // consumed; stored at column j - i + band.
  const std::size_t n = tokens.size();
  const std::size_t m = params_.m;
  const auto band = static_cast<std::ptrdiff_t>(params_.band);
  const std::size_t width = 2 * params_.band + 1;
  const double gap = gap_cost();

  AlignmentScores out;
  out.aligned_prefix.resize(n);
  for (std::size_t i = 0; i < n && i < m; ++i) {
    out.unaligned += cell_cost(row_for(shift, i), tokens[i]);
  }

  std::vector<double> prev(width, kNegInf), cur(width, kNegInf);
  for (std::ptrdiff_t j = 0; j <= band && static_cast<std::size_t>(j) <= m; ++j) {
    prev[static_cast<std::size_t>(j + band)] = -static_cast<double>(j) * gap;
  }
  for (std::size_t i = 1; i <= n; ++i) {
    std::fill(cur.begin(), cur.end(), kNegInf);
    const auto ii = static_cast<std::ptrdiff_t>(i);
    double best = kNegInf;
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(width); ++c) {
      const std::ptrdiff_t j = ii + c - band;
      if (j < 0 || j > static_cast<std::ptrdiff_t>(m)) continue;
      double v = kNegInf;
      // diagonal: token i matched to key row j-1, same column in the previous row
      if (j >= 1 && prev[c] > kNegInf) {
        const std::size_t row = row_for(shift, static_cast<std::size_t>(j - 1));
        v = prev[c] + cell_cost(row, tokens[i - 1]);
      }
      // token i left unmatched: (i-1, j) sits one column to the right
      if (c + 1 < static_cast<std::ptrdiff_t>(width) && prev[c + 1] > kNegInf) {
        v = std::max(v, prev[c + 1] - gap);
      }
      // key row j-1 skipped: (i, j-1) is one column to the left
      if (c >= 1 && cur[c - 1] > kNegInf) v = std::max(v, cur[c - 1] - gap);
      cur[c] = v;
      best = std::max(best, v);
    }
    out.aligned_prefix[i - 1] = best;
    std::swap(prev, cur);
  }
  return out;
}

std::vector<double> Inverse::prefix_statistics(std::span<const TokenId> tokens) const {
  std::vector<double> curve(tokens.size(), kNegInf);
  for (std::size_t s = 0; s < params_.shifts; ++s) {
    const auto scores = align(tokens, s);
    for (std::size_t i = 0; i < curve.size(); ++i) {
      curve[i] = std::max(curve[i], scores.aligned_prefix[i]);
    }
  }
  return curve;
}

double Inverse::unaligned_score(std::span<const TokenId> tokens) const {
  double best = kNegInf;
  for (std::size_t s = 0; s < params_.shifts; ++s) {
    double sum = 0.0;
    for (std::size_t i = 0; i < tokens.size() && i < params_.m; ++i) sum += cell_cost(row_for(s, i), tokens[i]);
    best = std::max(best, sum);
  }
  return best;
}

std::vector<double> Inverse::evidence(std::span<const TokenId> tokens) const {
  std::vector<double> out(tokens.size(), 0.0);
  for (std::size_t i = 0; i < tokens.size() && i < params_.m; ++i) {
    out[i] = cell_cost(row_for(0, i), tokens[i]);
  }
  return out;
}

DetectionReport Inverse::detect(std::span<const TokenId> tokens, const NullCalibration& cal) const {
  auto report = PretextScheme::detect(tokens, cal);
  report.auxiliary = unaligned_score(tokens.first(report.length));
  return report;
}

}  // namespace wmlab::pretext
