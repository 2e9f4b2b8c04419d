#include "bittery/model.hpp"

#include <cmath>
#include <numbers>

#include "bittery/numeric.hpp"

namespace bittery {

namespace {
constexpr double kSumTol = 1e-12;
}

Temperature::Temperature(double beta) : beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InvalidSpec("Temperature: beta must be positive and finite");
}

Temperature Temperature::from_kT(double kT) {
  if (!(kT > 0.0) || !std::isfinite(kT))
    throw InvalidSpec("Temperature: kT must be positive and finite");
  return Temperature(1.0 / kT);
}

SystemSpec::SystemSpec(std::vector<SystemLevel> levels)
    : levels_(std::move(levels)) {
  if (levels_.empty()) throw InvalidSpec("SystemSpec: no levels");
  if (levels_.front().energy != 0.0)
    throw InvalidSpec("SystemSpec: minimum energy must be exactly zero");
  double prev = -1.0;
  for (const auto& lv : levels_) {
    if (!(lv.energy > prev))
      throw InvalidSpec("SystemSpec: energies must be strictly increasing");
    if (lv.energy < 0.0 || !std::isfinite(lv.energy))
      throw InvalidSpec("SystemSpec: energies must be finite and >= 0");
    if (lv.multiplicity < 1)
      throw InvalidSpec("SystemSpec: multiplicities must be >= 1");
    prev = lv.energy;
  }
}

std::int64_t SystemSpec::dimension() const {
  std::int64_t d = 0;
  for (const auto& lv : levels_) d += lv.multiplicity;
  return d;
}

DiagonalState::DiagonalState(std::vector<std::vector<SubBlock>> blocks)
    : blocks_(std::move(blocks)) {
  double total = 0.0;
  for (const auto& level : blocks_)
    for (const auto& sb : level) {
      if (sb.weight < 0.0)
        throw InvalidSpec("DiagonalState: negative weight");
      if (sb.count < 0) throw InvalidSpec("DiagonalState: negative count");
      total += sb.weight * static_cast<double>(sb.count);
    }
  if (std::abs(total - 1.0) > kSumTol)
    throw InvalidSpec("DiagonalState: weights must sum to 1");
}

DiagonalState DiagonalState::from_level_totals(
    const SystemSpec& system, const std::vector<double>& totals) {
  if (totals.size() != system.level_count())
    throw InvalidSpec("DiagonalState: one total per level required");
  std::vector<std::vector<SubBlock>> blocks(totals.size());
  for (std::size_t i = 0; i < totals.size(); ++i) {
    const auto m = system.levels()[i].multiplicity;
    blocks[i].push_back({totals[i] / static_cast<double>(m), m});
  }
  return DiagonalState(std::move(blocks));
}

DiagonalState DiagonalState::from_state_weights(
    const SystemSpec& system, const std::vector<std::vector<double>>& w) {
  if (w.size() != system.level_count())
    throw InvalidSpec("DiagonalState: level count mismatch");
  std::vector<std::vector<SubBlock>> blocks(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (static_cast<std::int64_t>(w[i].size()) !=
        system.levels()[i].multiplicity)
      throw InvalidSpec("DiagonalState: degeneracy count mismatch");
    // compress runs of equal weight
    for (double x : w[i]) {
      if (!blocks[i].empty() && blocks[i].back().weight == x)
        ++blocks[i].back().count;
      else
        blocks[i].push_back({x, 1});
    }
  }
  return DiagonalState(std::move(blocks));
}

DiagonalState DiagonalState::pure(const SystemSpec& system,
                                  std::size_t level) {
  if (level >= system.level_count())
    throw InvalidSpec("DiagonalState::pure: level out of range");
  std::vector<std::vector<SubBlock>> blocks(system.level_count());
  for (std::size_t i = 0; i < system.level_count(); ++i) {
    if (i == level) {
      blocks[i].push_back({1.0, 1});
      if (system.levels()[i].multiplicity > 1)
        blocks[i].push_back({0.0, system.levels()[i].multiplicity - 1});
    } else {
      blocks[i].push_back({0.0, system.levels()[i].multiplicity});
    }
  }
  return DiagonalState(std::move(blocks));
}

double DiagonalState::level_total(std::size_t level) const {
  double t = 0.0;
  for (const auto& sb : blocks_.at(level))
    t += sb.weight * static_cast<double>(sb.count);
  return t;
}

BathSpec BathSpec::analytic(int base, double spacing, std::int64_t levels,
                            double ref_log_multiplicity) {
  if (base < 2) throw InvalidSpec("BathSpec: base must be >= 2");
  if (!(spacing > 0.0)) throw InvalidSpec("BathSpec: spacing must be > 0");
  if (levels < 1) throw InvalidSpec("BathSpec: need at least one level");
  BathSpec b;
  b.analytic_ = true;
  b.base_ = base;
  b.spacing_ = spacing;
  b.levels_ = levels;
  b.ref_log_mult_ = ref_log_multiplicity;
  return b;
}

BathSpec BathSpec::explicit_levels(std::vector<ExplicitLevel> levels) {
  if (levels.empty()) throw InvalidSpec("BathSpec: no levels");
  double prev = -1.0;
  for (const auto& lv : levels) {
    if (!(lv.energy > prev))
      throw InvalidSpec("BathSpec: energies must be strictly increasing");
    if (lv.multiplicity < 1)
      throw InvalidSpec("BathSpec: multiplicities must be >= 1");
    prev = lv.energy;
  }
  BathSpec b;
  b.analytic_ = false;
  b.explicit_ = std::move(levels);
  return b;
}

double BathSpec::beta() const {
  if (!analytic_) throw InvalidSpec("BathSpec: beta defined for analytic bath");
  return std::log(static_cast<double>(base_)) / spacing_;
}

double BathSpec::spacing() const { return spacing_; }
int BathSpec::base() const { return base_; }

std::int64_t BathSpec::level_count() const {
  return analytic_ ? levels_ : static_cast<std::int64_t>(explicit_.size());
}

double BathSpec::ref_log_multiplicity() const { return ref_log_mult_; }

double BathSpec::log_multiplicity_at(std::int64_t index) const {
  if (!analytic_)
    throw InvalidSpec("BathSpec: log_multiplicity_at is analytic-only");
  if (index < 0 || index >= levels_)
    throw IncommensurateEnergy("BathSpec: grid index out of range");
  return ref_log_mult_ +
         static_cast<double>(index) * std::log(static_cast<double>(base_));
}

std::int64_t BathSpec::grid_index(double energy) const {
  if (!analytic_) throw InvalidSpec("BathSpec: grid_index is analytic-only");
  const double x = energy / spacing_;
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9)
    throw IncommensurateEnergy("BathSpec: energy off the bath grid");
  const auto idx = static_cast<std::int64_t>(r);
  if (idx < 0 || idx >= levels_)
    throw IncommensurateEnergy("BathSpec: energy outside bath range");
  return idx;
}

const std::vector<BathSpec::ExplicitLevel>& BathSpec::levels_list() const {
  if (analytic_)
    throw InvalidSpec("BathSpec: explicit level list on analytic bath");
  return explicit_;
}

WeightLadder::WeightLadder(double spacing, std::int64_t level_count,
                           double origin)
    : spacing_(spacing), level_count_(level_count), origin_(origin) {
  if (!(spacing > 0.0)) throw InvalidSpec("WeightLadder: spacing must be > 0");
  if (level_count < 1)
    throw InvalidSpec("WeightLadder: need at least one level");
}

bool WeightLadder::difference_on_grid(double w) const {
  const double x = w / spacing_;
  return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x));
}

std::int64_t WeightLadder::difference_index(double w) const {
  if (!difference_on_grid(w))
    throw OffGrid("WeightLadder: value not a multiple of the spacing");
  return static_cast<std::int64_t>(std::round(w / spacing_));
}

double log_partition_function(const SystemSpec& system,
                              const Temperature& temp) {
  std::vector<double> terms;
  terms.reserve(system.level_count());
  for (const auto& lv : system.levels())
    terms.push_back(std::log(static_cast<double>(lv.multiplicity)) -
                    temp.beta() * lv.energy);
  return log_sum_exp(std::move(terms));
}

double partition_function(const SystemSpec& system, const Temperature& temp) {
  return std::exp(log_partition_function(system, temp));
}

double standard_free_energy(const SystemSpec& system, const Temperature& temp) {
  return -temp.kT() * log_partition_function(system, temp);
}

DiagonalState gibbs_state(const SystemSpec& system, const Temperature& temp) {
  const double log_z = log_partition_function(system, temp);
  std::vector<double> totals(system.level_count());
  for (std::size_t i = 0; i < system.level_count(); ++i) {
    const auto& lv = system.levels()[i];
    totals[i] = std::exp(std::log(static_cast<double>(lv.multiplicity)) -
                         temp.beta() * lv.energy - log_z);
  }
  // renormalize away the last few ulp so the state validates
  double s = 0.0;
  for (double t : totals) s += t;
  for (double& t : totals) t /= s;
  return DiagonalState::from_level_totals(system, totals);
}

}  // namespace bittery
