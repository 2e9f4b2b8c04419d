#pragma once

#include <limits>
#include <vector>

namespace bittery {

// log(sum_i exp(terms[i])), computed with a max shift and sorted
// (ascending) accumulation so the result is deterministic regardless of
// the order the terms were produced in.  -inf terms are ignored; an empty
// sum returns -inf.
double log_sum_exp(std::vector<double> terms);

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace bittery
