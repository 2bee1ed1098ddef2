#pragma once

namespace symext {

/// Largest k accepted by operations that materialize 2^k-dimensional
/// operators. Default 12; SYMEXT_MAX_K overrides.
int max_full_space_k();

/// Largest k accepted by operations that only touch block coordinates.
/// Default 64; SYMEXT_MAX_K overrides.
int max_block_k();

/// Throws std::out_of_range naming `what` unless 1 <= k <= limit.
void require_k_in_range(int k, int limit, const char* what);

}  // namespace symext
