#include "bittery/shell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "bittery/numeric.hpp"

namespace bittery {

namespace {

constexpr double kTieTol = 1e-12;  // log-value tolerance for one value class

double block_log_mass(const SpectrumBlock& b) {
  return b.log_value + b.log_multiplicity;
}

}  // namespace

BlockSpectrum::BlockSpectrum(std::vector<SpectrumBlock> blocks,
                             std::optional<AnalyticInfo> info)
    : blocks_(std::move(blocks)), info_(std::move(info)) {
  std::stable_sort(blocks_.begin(), blocks_.end(),
                   [](const SpectrumBlock& a, const SpectrumBlock& b) {
                     return a.log_value > b.log_value;
                   });
  std::vector<double> masses;
  masses.reserve(blocks_.size());
  for (const auto& b : blocks_) masses.push_back(block_log_mass(b));
  log_trace_ = log_sum_exp(std::move(masses));
  if (log_trace_ == kNegInf)
    throw EmptyShell("BlockSpectrum: zero trace");
}

void BlockSpectrum::to_csv(std::ostream& os) const {
  os << "log_value,log_multiplicity,tag\n";
  for (const auto& b : blocks_)
    os << b.log_value << ',' << b.log_multiplicity << ',' << b.tag.level << ':'
       << b.tag.sub << '\n';
}

double SmoothingResult::h_for(BlockTag tag) const {
  for (std::size_t i = 0; i < tags.size(); ++i)
    if (tags[i] == tag) return h[i];
  throw InvalidRange("SmoothingResult: unknown tag");
}

BlockSpectrum assemble_shell(const DiagonalState& state,
                             const SystemSpec& system, const BathSpec& bath,
                             const BitterySpec& bittery, double total_energy) {
  if (!bath.is_analytic())
    throw InvalidSpec(
        "assemble_shell: explicit baths are handled by the exact oracle");
  const double beta = bath.beta();
  const double spacing = bath.spacing();
  // system energies must sit on the bath grid for the exponential
  // degeneracy relation to be exact
  for (const auto& lv : system.levels()) {
    const double x = lv.energy / spacing;
    if (std::abs(x - std::round(x)) > 1e-9)
      throw IncommensurateEnergy(
          "assemble_shell: system energy off the bath grid");
  }
  {
    const double x = total_energy / spacing;
    if (std::abs(x - std::round(x)) > 1e-9)
      throw IncommensurateEnergy(
          "assemble_shell: total energy off the bath grid");
  }
  const double log_zb =
      bath.ref_log_multiplicity() +
      std::log(static_cast<double>(bath.level_count()));
  const double n_ln2 =
      static_cast<double>(bittery.n) * std::numbers::ln2;

  std::vector<SpectrumBlock> blocks;
  for (std::size_t i = 0; i < state.level_count(); ++i) {
    const double e_s = system.levels()[i].energy;
    const double e_b = total_energy - e_s;
    std::int64_t idx;
    try {
      idx = bath.grid_index(e_b);
    } catch (const IncommensurateEnergy&) {
      continue;  // this system level cannot reach the shell
    }
    const double log_mb = bath.log_multiplicity_at(idx);
    for (std::size_t s = 0; s < state.blocks()[i].size(); ++s) {
      const auto& sb = state.blocks()[i][s];
      if (sb.weight <= 0.0 || sb.count == 0) continue;
      SpectrumBlock b;
      b.log_value = std::log(sb.weight) - beta * e_b - log_zb - n_ln2;
      b.log_multiplicity =
          std::log(static_cast<double>(sb.count)) + log_mb + n_ln2;
      b.tag = {static_cast<std::int32_t>(i), static_cast<std::int32_t>(s)};
      blocks.push_back(b);
    }
  }
  if (blocks.empty())
    throw EmptyShell("assemble_shell: no (E_S, E_B) pair realizes E");

  BlockSpectrum::AnalyticInfo info;
  info.beta = beta;
  info.log_mb_at_total =
      bath.ref_log_multiplicity() + beta * total_energy;
  info.cells = bittery.n;
  return BlockSpectrum(std::move(blocks), info);
}

BlockSpectrum system_weight_spectrum(const DiagonalState& state,
                                     const SystemSpec& system,
                                     const Temperature& temp) {
  std::vector<SpectrumBlock> blocks;
  for (std::size_t i = 0; i < state.level_count(); ++i) {
    const double e_s = system.levels()[i].energy;
    for (std::size_t s = 0; s < state.blocks()[i].size(); ++s) {
      const auto& sb = state.blocks()[i][s];
      if (sb.weight <= 0.0 || sb.count == 0) continue;
      SpectrumBlock b;
      b.log_value = std::log(sb.weight) + temp.beta() * e_s;
      b.log_multiplicity =
          std::log(static_cast<double>(sb.count)) - temp.beta() * e_s;
      b.tag = {static_cast<std::int32_t>(i), static_cast<std::int32_t>(s)};
      blocks.push_back(b);
    }
  }
  if (blocks.empty())
    throw DegenerateState("system_weight_spectrum: state has empty support");
  return BlockSpectrum(std::move(blocks));
}

SmoothingResult epsilon_truncate(const BlockSpectrum& spec, double epsilon) {
  if (!(epsilon >= 0.0) || !(epsilon < 1.0))
    throw InvalidRange("epsilon_truncate: need 0 <= eps < 1");

  const auto& blocks = spec.blocks();
  SmoothingResult res;
  res.epsilon = epsilon;
  res.h.assign(blocks.size(), 0.0);
  res.tags.reserve(blocks.size());
  for (const auto& b : blocks) res.tags.push_back(b.tag);
  res.trace_kept = (1.0 - epsilon) * std::exp(spec.log_trace());

  if (epsilon == 0.0) {
    // full support, no fractional boundary
    std::fill(res.h.begin(), res.h.end(), 1.0);
  } else {
    // normalized block masses
    std::vector<double> frac(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
      frac[i] = std::exp(block_log_mass(blocks[i]) - spec.log_trace());

    const double target = 1.0 - epsilon;
    double acc = 0.0;
    std::size_t i = 0;
    while (i < blocks.size() && acc < target) {
      // one tied value class [i, j)
      std::size_t j = i + 1;
      while (j < blocks.size() &&
             std::abs(blocks[j].log_value - blocks[i].log_value) <= kTieTol)
        ++j;
      double cmass = 0.0;
      for (std::size_t k = i; k < j; ++k) cmass += frac[k];
      if (acc + cmass <= target + 1e-15) {
        // boundary landing exactly on a class edge keeps the whole class
        for (std::size_t k = i; k < j; ++k) res.h[k] = 1.0;
        acc += cmass;
      } else {
        const double f = std::clamp((target - acc) / cmass, 0.0, 1.0);
        for (std::size_t k = i; k < j; ++k) res.h[k] = f;
        acc = target;
      }
      i = j;
    }
  }

  std::vector<double> rank_terms;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (res.h[i] > 0.0)
      rank_terms.push_back(blocks[i].log_multiplicity + std::log(res.h[i]));
  res.log_rank = log_sum_exp(std::move(rank_terms));
  return res;
}

double rank_epsilon(const BlockSpectrum& spec, double epsilon) {
  const SmoothingResult res = epsilon_truncate(spec, epsilon);
  if (spec.analytic_info()) {
    const auto& info = *spec.analytic_info();
    // closed form: n ln2 + ln M_B(E) + ln sum h_eps exp(-beta E_S);
    // the per-block terms below are count * h * exp(-beta E_S)
    std::vector<double> terms;
    for (std::size_t i = 0; i < spec.blocks().size(); ++i) {
      if (res.h[i] <= 0.0) continue;
      const auto& b = spec.blocks()[i];
      // log_multiplicity = ln count + ln M_B(E_B) + n ln2 and
      // ln M_B(E_B) = ln M_B(E) - beta E_S, so subtracting the shell
      // constants recovers ln(count) - beta E_S exactly.
      terms.push_back(b.log_multiplicity -
                      static_cast<double>(info.cells) * std::numbers::ln2 -
                      info.log_mb_at_total + std::log(res.h[i]));
    }
    const double closed =
        static_cast<double>(info.cells) * std::numbers::ln2 +
        info.log_mb_at_total + log_sum_exp(std::move(terms));
    if (std::abs(closed - res.log_rank) > 1e-12)
      throw Error("rank_epsilon: closed-form cross-check failed");
  }
  return res.log_rank;
}

bool majorizes(const BlockSpectrum& a, const BlockSpectrum& b) {
  constexpr double kTol = 1e-10;
  const double trace_a = std::exp(a.log_trace());
  const double trace_b = std::exp(b.log_trace());
  if (std::abs(trace_a - trace_b) > kTol)
    throw TraceMismatch("majorizes: traces differ");

  // Walk both sorted block lists by cumulative count.  Prefix-sum
  // differences are piecewise linear in the position, so checking at
  // every block boundary of either side is sufficient.
  struct Cursor {
    const std::vector<SpectrumBlock>& blocks;
    std::size_t i = 0;
    double used = 0.0;    // entries consumed from block i
    double prefix = 0.0;  // mass consumed so far
    double count(std::size_t k) const {
      return std::exp(blocks[k].log_multiplicity);
    }
    double remaining() const {
      return i < blocks.size() ? count(i) - used : 0.0;
    }
    // advance by d entries (d <= remaining), accumulating mass
    void advance(double d) {
      prefix += d * std::exp(blocks[i].log_value);
      used += d;
      if (used >= count(i) - 1e-9 * std::max(1.0, count(i))) {
        ++i;
        used = 0.0;
      }
    }
  };
  Cursor ca{a.blocks()}, cb{b.blocks()};
  while (ca.i < ca.blocks.size() || cb.i < cb.blocks.size()) {
    double step;
    if (ca.i >= ca.blocks.size())
      step = cb.remaining();
    else if (cb.i >= cb.blocks.size())
      step = ca.remaining();
    else
      step = std::min(ca.remaining(), cb.remaining());
    if (!(step > 0.0)) break;
    if (ca.i < ca.blocks.size()) ca.advance(step);
    if (cb.i < cb.blocks.size()) cb.advance(step);
    if (ca.prefix < cb.prefix - kTol) return false;
  }
  return true;
}

}  // namespace bittery
