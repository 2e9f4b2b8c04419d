#include "bittery/storage.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "bittery/numeric.hpp"

namespace bittery {

namespace {
constexpr double kSumTol = 1e-12;
}

BitteryState::BitteryState(std::int64_t n, std::vector<Branch> branches)
    : n_(n) {
  if (n < 0) throw InvalidSpec("BitteryState: negative cell count");
  // merge equal-m branches, drop zero-probability ones
  std::map<std::int64_t, double> merged;
  double total = 0.0;
  for (const auto& b : branches) {
    if (b.probability < 0.0)
      throw InvalidSpec("BitteryState: negative branch probability");
    if (b.mixed_cells < 0 || b.mixed_cells > n)
      throw InvalidSpec("BitteryState: mixed cell count out of range");
    total += b.probability;
    if (b.probability > 0.0) merged[b.mixed_cells] += b.probability;
  }
  if (std::abs(total - 1.0) > kSumTol)
    throw InvalidSpec("BitteryState: branch probabilities must sum to 1");
  for (const auto& [m, p] : merged) branches_.push_back({p, m});
  if (branches_.empty())
    throw InvalidSpec("BitteryState: no branch with positive probability");
}

BitteryState BitteryState::pure_stack(std::int64_t n, std::int64_t mixed_cells) {
  return BitteryState(n, {{1.0, mixed_cells}});
}

BitteryState BitteryState::initial(std::int64_t n) {
  return BitteryState(n, {{1.0, n}});
}

BitteryState BitteryState::mixture(std::int64_t n,
                                   std::vector<Branch> branches) {
  return BitteryState(n, std::move(branches));
}

std::int64_t BitteryState::support_log2() const {
  return branches_.back().mixed_cells;
}

std::vector<BitteryState::Ring> BitteryState::rings() const {
  // branches_ is sorted ascending by mixed_cells; the ring between
  // supp(xi^(m_{j-1})) and supp(xi^(m_j)) carries the tail value
  // sum_{i >= j} P_i 2^-m_i.
  std::vector<Ring> rings;
  for (std::size_t j = 0; j < branches_.size(); ++j) {
    std::vector<double> tail;
    for (std::size_t i = j; i < branches_.size(); ++i)
      tail.push_back(std::log(branches_[i].probability) -
                     static_cast<double>(branches_[i].mixed_cells) *
                         std::numbers::ln2);
    Ring r;
    r.log_value = log_sum_exp(std::move(tail));
    const double mj = static_cast<double>(branches_[j].mixed_cells);
    if (j == 0) {
      r.log_count = mj * std::numbers::ln2;
    } else {
      const double prev =
          static_cast<double>(branches_[j - 1].mixed_cells);
      r.log_count =
          mj * std::numbers::ln2 +
          std::log1p(-std::exp(-(mj - prev) * std::numbers::ln2));
    }
    rings.push_back(r);
  }
  return rings;
}

double bittery_entropy(const BitteryState& state) {
  double s = 0.0;
  for (const auto& r : state.rings())
    s -= std::exp(r.log_count + r.log_value) * r.log_value;
  return s;
}

StorageLedger StorageLedger::make(double delta_E, double delta_S,
                                  const Temperature& temp) {
  StorageLedger l;
  l.delta_E = delta_E;
  l.delta_S = delta_S;
  l.delta_F = delta_E - temp.kT() * delta_S;
  l.heat_like = delta_S > 0.0 ? temp.kT() * delta_S : 0.0;
  return l;
}

BitteryState final_bittery_state(const SchemeSpec& scheme, std::int64_t n,
                                 std::int64_t m) {
  if (scheme.kind != SchemeSpec::Kind::Deterministic)
    throw UnsupportedRange(
        "final_bittery_state: single-m form is for the deterministic scheme");
  if (m < 0 || m >= n)
    throw UnsupportedRange("final_bittery_state: need 0 <= m < n");
  return BitteryState::mixture(
      n, {{scheme.epsilon, n}, {1.0 - scheme.epsilon, m}});
}

BitteryState final_bittery_state(const SchemeSpec& scheme, std::int64_t n,
                                 std::int64_t m1, std::int64_t m2,
                                 const std::vector<double>& p_a) {
  if (m1 < 0 || m2 < m1 || m2 >= n)
    throw UnsupportedRange("final_bittery_state: need 0 <= m1 <= m2 < n");
  if (static_cast<std::int64_t>(p_a.size()) != m2 - m1 + 1)
    throw UnsupportedRange(
        "final_bittery_state: distribution must cover [m1, m2]");
  switch (scheme.kind) {
    case SchemeSpec::Kind::Deterministic:
      if (m1 != m2)
        throw UnsupportedRange(
            "final_bittery_state: deterministic scheme has a single m");
      break;
    case SchemeSpec::Kind::Bounded:
      if (m2 - m1 > scheme.c)
        throw UnsupportedRange(
            "final_bittery_state: distribution wider than the c window");
      break;
    case SchemeSpec::Kind::Guaranteed:
      if (m1 != 0)
        throw UnsupportedRange(
            "final_bittery_state: guaranteed scheme starts at l = 0");
      break;
  }
  std::vector<BitteryState::Branch> branches;
  branches.push_back({scheme.epsilon, n});
  for (std::size_t i = 0; i < p_a.size(); ++i)
    branches.push_back({(1.0 - scheme.epsilon) * p_a[i],
                        m1 + static_cast<std::int64_t>(i)});
  return BitteryState::mixture(n, std::move(branches));
}

EntropyCertificate entropy_change_certificate(const SchemeSpec& scheme,
                                              std::int64_t n, std::int64_t m1,
                                              std::int64_t m2,
                                              const std::vector<double>& p_a,
                                              const Temperature& temp) {
  if (m1 < 0 || m2 < m1 || m2 >= n)
    throw UnsupportedRange("entropy_change_certificate: need 0 <= m1 <= m2 < n");
  if (static_cast<std::int64_t>(p_a.size()) != m2 - m1 + 1)
    throw UnsupportedRange(
        "entropy_change_certificate: distribution must cover [m1, m2]");
  if (scheme.kind == SchemeSpec::Kind::Bounded && m2 - m1 > scheme.c)
    throw UnsupportedRange(
        "entropy_change_certificate: distribution wider than the c window");
  double total = 0.0;
  for (double p : p_a) {
    if (p < 0.0)
      throw UnsupportedRange("entropy_change_certificate: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kSumTol)
    throw UnsupportedRange(
        "entropy_change_certificate: distribution must sum to 1");

  // success branch only: the eps*rho_A part is excluded by definition
  std::vector<BitteryState::Branch> branches;
  for (std::size_t i = 0; i < p_a.size(); ++i)
    branches.push_back({p_a[i], m1 + static_cast<std::int64_t>(i)});
  const BitteryState success = BitteryState::mixture(n, std::move(branches));

  EntropyCertificate cert;
  cert.success_entropy = bittery_entropy(success);
  const double n_ln2 = static_cast<double>(n) * std::numbers::ln2;
  const double delta_s = cert.success_entropy - n_ln2;
  cert.ledger = StorageLedger::make(0.0, delta_s, temp);
  cert.entropy_decreases = delta_s < 0.0;
  // S(success) <= ln|supp| = m2 ln2 < n ln2 whenever m2 < n: the support
  // count alone certifies the sign without touching floats
  cert.entropy_decreases_exact = success.support_log2() < n;

  // n - m2 >= log2(m2 - m1 + 1)  <=>  2^(n-m2) >= m2 - m1 + 1
  cert.sufficient_condition =
      (n - m2) < 63 ? (std::int64_t{1} << (n - m2)) >= (m2 - m1 + 1) : true;

  double mid = 0.0;
  for (std::size_t i = 0; i < p_a.size(); ++i) {
    if (p_a[i] <= 0.0) continue;
    const double l = static_cast<double>(m1 + static_cast<std::int64_t>(i));
    mid += p_a[i] * (l * std::numbers::ln2 - std::log(p_a[i]));
  }
  cert.chain_middle = mid;
  cert.chain_upper = std::log(static_cast<double>(m2 - m1 + 1)) +
                     static_cast<double>(m2) * std::numbers::ln2;
  return cert;
}

AdditionalWork weight_additional_work(const WeightLadder& ladder, double w_min,
                                      double w_max, const Temperature& temp) {
  const std::int64_t i_min = ladder.difference_index(w_min);
  const std::int64_t i_max = ladder.difference_index(w_max);
  if (i_max < i_min)
    throw InvalidRange("weight_additional_work: need w_min <= w_max");
  const std::int64_t count = i_max - i_min + 1;
  if (count > ladder.level_count())
    throw InvalidRange(
        "weight_additional_work: window wider than the ladder");

  const double bd = temp.beta() * ladder.spacing();
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(count));
  for (std::int64_t j = 0; j < count; ++j)
    terms.push_back(-bd * static_cast<double>(j));
  AdditionalWork out;
  out.value = temp.kT() * log_sum_exp(std::move(terms));
  if (count == 1) {
    out.closed_form = 0.0;
  } else {
    const double q = std::exp(-bd);
    out.closed_form =
        temp.kT() *
        (std::log1p(-std::pow(q, static_cast<double>(count))) -
         std::log1p(-q));
  }
  return out;
}

StorageLedger weight_ledger(const WeightTransition& transition,
                            const Temperature& temp) {
  double total = 0.0, e = 0.0, s = 0.0;
  for (const auto& [w, p] : transition.distribution) {
    if (p < 0.0) throw InvalidSpec("weight_ledger: negative probability");
    if (p > 0.0 && w <= 0.0)
      throw InvalidSpec("weight_ledger: work values must satisfy w_min > 0");
    total += p;
    e += p * w;
    if (p > 0.0) s -= p * std::log(p);
  }
  if (std::abs(total - 1.0) > kSumTol)
    throw InvalidSpec("weight_ledger: probabilities must sum to 1");
  return StorageLedger::make(e, s, temp);
}

}  // namespace bittery
