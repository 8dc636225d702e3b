// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "abridge/evaluation/metrics.hpp"

namespace abridge::testing {

/// Reference greedy fragment walk built on the set of all article substrings
/// (each mapped to its first start) instead of scanning match lengths.
std::vector<evaluation::Fragment> oracle_fragments(const std::vector<std::string>& article,
                                                   const std::vector<std::string>& summary);

struct ExhaustiveReport {
  std::uint64_t pairs = 0;
  std::uint64_t mismatches = 0;
  double seconds = 0.0;
  std::string first_mismatch;
};

/// Compares greedy_fragments with the substring-set oracle over every article
/// of length 0..max_len and every summary of length 1..max_len on `alphabet` symbols.
ExhaustiveReport exhaustive_fragment_check(int max_len, int alphabet);

}  // namespace abridge::testing
