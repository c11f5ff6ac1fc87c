#include "lindloc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "lindloc/errors.hpp"

namespace lindloc {

namespace {

struct FrequencyGroups {
  std::vector<double> omegas;  // ascending group representatives
  // group index for each ordered level pair (m, n), row-major in m
  std::vector<std::size_t> group_of_pair;
};

// Groups e_n - e_m over all level pairs by single linkage at tol.
FrequencyGroups group_frequencies(const EnergyLevels& levels) {
  const std::size_t nl = levels.count();
  std::vector<std::pair<double, std::size_t>> diffs;
  diffs.reserve(nl * nl);
  for (std::size_t m = 0; m < nl; ++m)
    for (std::size_t n = 0; n < nl; ++n)
      diffs.emplace_back(levels.energies[n] - levels.energies[m], m * nl + n);
  std::sort(diffs.begin(), diffs.end());

  FrequencyGroups out;
  out.group_of_pair.resize(nl * nl);
  std::size_t start = 0;
  while (start < diffs.size()) {
    std::size_t end = start + 1;
    while (end < diffs.size() &&
           diffs[end].first - diffs[end - 1].first <= levels.grouping_tol)
      ++end;
    double mean = 0.0;
    bool has_diagonal = false;
    for (std::size_t i = start; i < end; ++i) {
      mean += diffs[i].first;
      const std::size_t m = diffs[i].second / nl;
      const std::size_t n = diffs[i].second % nl;
      has_diagonal = has_diagonal || m == n;
      out.group_of_pair[diffs[i].second] = out.omegas.size();
    }
    // The zero-frequency group stays exactly at zero.
    out.omegas.push_back(has_diagonal ? 0.0 : mean / static_cast<double>(end - start));
    start = end;
  }
  return out;
}

}  // namespace

std::size_t EnergyLevels::degeneracy(std::size_t level) const {
  return static_cast<std::size_t>(std::count(level_of.begin(), level_of.end(), level));
}

ComplexMatrix EnergyLevels::projector(std::size_t level) const {
  const std::size_t d = dim();
  ComplexMatrix p(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    if (level_of[k] != level) continue;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        p(r, c) += basis(r, k) * std::conj(basis(c, k));
  }
  return p;
}

std::vector<double> EnergyLevels::bohr_frequencies() const {
  return group_frequencies(*this).omegas;
}

double default_grouping_tol(const HermitianEigenSystem& eigs) {
  double scale = 0.0;
  for (double e : eigs.eigenvalues) scale = std::max(scale, std::abs(e));
  return scale > 0.0 ? 1e-9 * scale : 1e-9;
}

EnergyLevels group_levels(const HermitianEigenSystem& eigs, double tol) {
  if (!(tol > 0.0)) throw Error("group_levels: tolerance must be positive");
  const auto& ev = eigs.eigenvalues;
  EnergyLevels out;
  out.grouping_tol = tol;
  out.basis = eigs.eigenvectors;
  out.level_of.resize(ev.size());
  std::size_t start = 0;
  while (start < ev.size()) {
    std::size_t end = start + 1;
    while (end < ev.size() && ev[end] - ev[end - 1] <= tol) ++end;
    const double diameter = ev[end - 1] - ev[start];
    if (diameter > 10.0 * tol) {
      std::ostringstream msg;
      msg << "group_levels: eigenvalues " << ev[start] << " .. " << ev[end - 1]
          << " chain together at tolerance " << tol << " (cluster diameter "
          << diameter << " > 10*tol); spectrum too dense to group reliably";
      throw AmbiguousSpectrumError(msg.str());
    }
    double mean = 0.0;
    for (std::size_t i = start; i < end; ++i) {
      mean += ev[i];
      out.level_of[i] = out.energies.size();
    }
    out.energies.push_back(mean / static_cast<double>(end - start));
    start = end;
  }
  return out;
}

const BohrComponent* BohrDecomposition::find(double omega, double tol) const {
  for (const auto& t : terms)
    if (std::abs(t.omega - omega) <= tol) return &t;
  return nullptr;
}

ComplexMatrix BohrDecomposition::sum() const {
  ComplexMatrix s(source.rows(), source.cols());
  for (const auto& t : terms) s += t.op;
  return s;
}

BohrDecomposition decompose_operator(const ComplexMatrix& a, const EnergyLevels& levels) {
  const std::size_t d = levels.dim();
  if (a.rows() != d || a.cols() != d) {
    std::ostringstream msg;
    msg << "decompose_operator: operator is " << a.rows() << "x" << a.cols()
        << " but the spectrum has dimension " << d;
    throw DimensionError(msg.str());
  }
  const auto groups = group_frequencies(levels);
  const std::size_t nl = levels.count();
  const ComplexMatrix& u = levels.basis;
  const ComplexMatrix udag = u.adjoint();
  // In the eigenbasis element (j, k) of U^dagger A U carries frequency
  // e(level k) - e(level j).
  const ComplexMatrix rotated = udag * a * u;

  std::vector<ComplexMatrix> pieces(groups.omegas.size());
  std::vector<bool> touched(groups.omegas.size(), false);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      const cplx z = rotated(j, k);
      if (z == cplx{}) continue;
      const std::size_t g = groups.group_of_pair[levels.level_of[j] * nl + levels.level_of[k]];
      if (!touched[g]) {
        pieces[g] = ComplexMatrix(d, d);
        touched[g] = true;
      }
      pieces[g](j, k) = z;
    }

  BohrDecomposition out;
  out.source = a;
  const double drop = 1e-12 * a.max_abs();
  for (std::size_t g = 0; g < pieces.size(); ++g) {
    if (!touched[g]) continue;
    ComplexMatrix op = u * pieces[g] * udag;
    if (op.max_abs() <= drop) continue;
    out.terms.push_back({groups.omegas[g], std::move(op)});
  }
  return out;
}

ComplexMatrix secular_filter(const ComplexMatrix& h, const EnergyLevels& levels) {
  const std::size_t d = levels.dim();
  if (h.rows() != d || h.cols() != d) {
    throw DimensionError("secular_filter: operator dimension does not match the spectrum");
  }
  const ComplexMatrix& u = levels.basis;
  const ComplexMatrix udag = u.adjoint();
  ComplexMatrix rotated = udag * h * u;
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k)
      if (levels.level_of[j] != levels.level_of[k]) rotated(j, k) = 0.0;
  ComplexMatrix out = u * rotated * udag;
  if (out.max_abs() <= 1e-12 * h.max_abs()) return ComplexMatrix(d, d);
  return hermitian_part(out);
}

std::string to_string(DiagnosticStatus s) {
  switch (s) {
    case DiagnosticStatus::pass:
      return "PASS";
    case DiagnosticStatus::warn:
      return "WARN";
    case DiagnosticStatus::fail:
      return "FAIL";
  }
  return "?";
}

std::string SpectrumDiagnostics::summary() const {
  std::ostringstream s;
  s << to_string(status) << ": alpha=" << alpha;
  if (min_frequency) s << ", min|w|=" << *min_frequency << " (ratio " << frequency_ratio << ")";
  if (min_frequency_gap)
    s << ", min|w-w'|=" << *min_frequency_gap << " (ratio " << gap_ratio << ")";
  return s.str();
}

SpectrumDiagnostics sparse_spectrum_diagnostics(const EnergyLevels& levels, double alpha) {
  if (!(alpha > 0.0)) throw Error("sparse_spectrum_diagnostics: alpha must be positive");
  SpectrumDiagnostics out;
  out.alpha = alpha;
  const auto omegas = levels.bohr_frequencies();
  for (double w : omegas) {
    if (w == 0.0) continue;
    if (!out.min_frequency || std::abs(w) < *out.min_frequency) out.min_frequency = std::abs(w);
  }
  // Representatives are already separated by more than the grouping tol,
  // so consecutive differences are the nonzero pairwise gaps.
  for (std::size_t i = 1; i < omegas.size(); ++i) {
    const double gap = omegas[i] - omegas[i - 1];
    if (!out.min_frequency_gap || gap < *out.min_frequency_gap) out.min_frequency_gap = gap;
  }
  constexpr double inf = std::numeric_limits<double>::infinity();
  out.frequency_ratio = out.min_frequency ? *out.min_frequency / alpha : inf;
  out.gap_ratio = out.min_frequency_gap ? *out.min_frequency_gap / alpha : inf;
  const double worst = std::min(out.frequency_ratio, out.gap_ratio);
  if (worst < 1.0) {
    out.status = DiagnosticStatus::fail;
  } else if (worst < 10.0) {
    out.status = DiagnosticStatus::warn;
  }
  return out;
}

}  // namespace lindloc
