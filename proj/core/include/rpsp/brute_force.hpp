#pragma once

#include <cstdint>

#include "rpsp/instance.hpp"

namespace rpsp {

inline constexpr int kDefaultBruteForceCap = 24;

/// Exhaustive oracle over all 2^n selections. Among optimal selections the
/// lexicographically smallest sorted member list wins. Throws
/// ErrorKind::SizeLimit when n exceeds `cap`.
Selection brute_force(const Instance& instance, int cap = kDefaultBruteForceCap);

/// True iff the sorted member list of `a` precedes that of `b` lexicographically.
bool lex_less(std::uint64_t a, std::uint64_t b);

}  // namespace rpsp
