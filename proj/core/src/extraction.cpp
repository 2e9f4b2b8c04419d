#include "bittery/extraction.hpp"

#include <cmath>
#include <numbers>

namespace bittery {

namespace {
// Snap tolerance for the reset-qubit floor.  Rational instances the
// oracle checks can land w_max exactly on a kT ln2 multiple; the floor is
// inclusive there and must not flip on the last ulp.
constexpr double kFloorSnap = 1e-9;
}  // namespace

SchemeSpec SchemeSpec::deterministic(double epsilon) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0))
    throw InvalidRange("SchemeSpec: need 0 <= eps < 1");
  return {Kind::Deterministic, epsilon, 0};
}

SchemeSpec SchemeSpec::bounded(double epsilon, std::int64_t c) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0))
    throw InvalidRange("SchemeSpec: need 0 <= eps < 1");
  if (c < 0) throw InvalidRange("SchemeSpec: fluctuation window c must be >= 0");
  return {Kind::Bounded, epsilon, c};
}

SchemeSpec SchemeSpec::guaranteed(double epsilon) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0))
    throw InvalidRange("SchemeSpec: need 0 <= eps < 1");
  return {Kind::Guaranteed, epsilon, 0};
}

double smooth_min_free_energy(const DiagonalState& state,
                              const SystemSpec& system, double epsilon,
                              const Temperature& temp) {
  const BlockSpectrum spectrum = system_weight_spectrum(state, system, temp);
  const SmoothingResult res = epsilon_truncate(spectrum, epsilon);
  return -temp.kT() * res.log_rank;
}

ExtractionResult max_work(const DiagonalState& state, const SystemSpec& system,
                          const SchemeSpec& scheme, const Temperature& temp,
                          std::int64_t cells) {
  if (cells < 1) throw InvalidRange("max_work: need at least one cell");
  ExtractionResult r;
  r.scheme = scheme;
  r.f_min = smooth_min_free_energy(state, system, scheme.epsilon, temp);
  r.f_thermal = standard_free_energy(system, temp);
  r.w_max = r.f_min - r.f_thermal;

  const double quantum = temp.kT() * std::numbers::ln2;
  const double x = r.w_max / quantum;
  r.exact_multiple = std::abs(x - std::round(x)) <= kFloorSnap;
  auto k = static_cast<std::int64_t>(std::floor(x + kFloorSnap));
  if (k < 0) k = 0;
  if (k > cells) k = cells;
  r.k_star = k;

  std::int64_t m_eff = 0;
  switch (scheme.kind) {
    case SchemeSpec::Kind::Deterministic:
    case SchemeSpec::Kind::Bounded:
      m_eff = cells - r.k_star;  // realized m (resp. m1)
      break;
    case SchemeSpec::Kind::Guaranteed:
      m_eff = 0;
      break;
  }
  r.rank_bound_log = static_cast<double>(m_eff) * std::numbers::ln2 +
                     log_partition_function(system, temp);
  return r;
}

double scheme_rank_bound(const SchemeSpec& scheme, std::int64_t m_param,
                         const SystemSpec& system, const Temperature& temp,
                         std::int64_t cells) {
  if (m_param < 0 || m_param >= cells)
    throw InvalidRange("scheme_rank_bound: need 0 <= m < n");
  if (scheme.kind == SchemeSpec::Kind::Bounded &&
      m_param + scheme.c >= cells)
    throw InvalidRange("scheme_rank_bound: m2 = m1 + c must stay below n");
  std::int64_t m_eff = 0;
  switch (scheme.kind) {
    case SchemeSpec::Kind::Deterministic:
    case SchemeSpec::Kind::Bounded:
      m_eff = m_param;
      break;
    case SchemeSpec::Kind::Guaranteed:
      m_eff = 0;
      break;
  }
  return static_cast<double>(m_eff) * std::numbers::ln2 +
         log_partition_function(system, temp);
}

}  // namespace bittery
