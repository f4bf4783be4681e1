#pragma once

#include "twosq/search.hpp"

// Serial reference evaluator for condition sets: walks every x in Z_n and
// applies the classifier verbatim, no residue tables, no stride tricks.
// Kept as the correctness baseline for the parallel kernels and as the
// slow side of the benchmark.

namespace twosq::search {

ConditionSet condition_set_reference(const CandidateModulus& c, Mode mode);

// Same direct evaluation for a single residue; certify_lift rechecks its
// precondition through this rather than through the kernel it is vouching for.
bool in_condition_set_direct(const CandidateModulus& c, Mode mode, std::uint64_t x);

}  // namespace twosq::search
