#include "wmlab/keyed/key_sequence.hpp"

#include <array>

#include "wmlab/common/error.hpp"

namespace wmlab::keyed {

KeySequence::KeySequence(std::size_t rows, std::size_t vocab_size, std::vector<double> values)
    : rows_(rows), vocab_size_(vocab_size), values_(std::move(values)) {
  if (values_.size() != rows_ * vocab_size_) throw Error("key sequence shape mismatch");
}

KeySequence sample_key_sequence(const SecretKey& key, std::size_t m, std::size_t vocab_size) {
  if (m == 0) throw ConfigError("key sequence length must be at least 1");
  const KeyedPrf prf(key);
  std::vector<double> values(m * vocab_size);
  std::array<std::uint32_t, 2> msg{};
  for (std::size_t t = 0; t < m; ++t) {
    msg[0] = static_cast<std::uint32_t>(t);
    for (std::size_t v = 0; v < vocab_size; ++v) {
      msg[1] = static_cast<std::uint32_t>(v);
      values[t * vocab_size + v] = prf.unit(PrfDomain::kKeySequence, msg);
    }
  }
  return KeySequence(m, vocab_size, std::move(values));
}

}  // namespace wmlab::keyed
