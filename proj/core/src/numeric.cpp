#include "bittery/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace bittery {

double log_sum_exp(std::vector<double> terms) {
  std::erase_if(terms, [](double t) { return t == kNegInf; });
  if (terms.empty()) return kNegInf;
  const double m = *std::max_element(terms.begin(), terms.end());
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - m);
  return m + std::log(sum);
}

}  // namespace bittery
