#pragma once

#include <cstddef>
#include <vector>

#include "wmlab/keyed/prf.hpp"

namespace wmlab::keyed {

/// Number of green ids for a vocabulary: round(gamma * |V|).
std::size_t green_count(double gamma, std::size_t vocab_size);

/// Keyed permutation of [0, |V|) seeded by (key, context): ids ordered by
/// their keyed hash, ties broken by id. The green list is its prefix of
/// green_count() ids. Returned ascending.
std::vector<TokenId> green_partition(const KeyedPrf& prf, const PrefixContext& ctx, double gamma,
                                     std::size_t vocab_size);
std::vector<TokenId> green_partition(const SecretKey& key, const PrefixContext& ctx, double gamma,
                                     std::size_t vocab_size);

/// Same partition as a membership mask indexed by token id.
std::vector<bool> green_mask(const KeyedPrf& prf, const PrefixContext& ctx, double gamma,
                             std::size_t vocab_size);

}  // namespace wmlab::keyed
