#include "fermiqit/jordan_wigner.hpp"

#include <algorithm>
#include <bit>

#include <Eigen/Eigenvalues>

#include "fermiqit/entanglement.hpp"
#include "fermiqit/ptrace.hpp"

namespace fermiqit {

namespace {

double jw_phase(std::uint32_t pattern) {
  return std::popcount(pattern) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

QubitState jw_map_state(const FockState& psi) {
  if (psi.basis != BasisTag::Canonical)
    throw std::invalid_argument("Jordan-Wigner map acts on the canonical basis");
  QubitState out;
  out.n_qubits = psi.mode_count();
  out.amps = psi.amps;
  for (std::uint32_t p = 0; p < psi.dim(); ++p) out.amps[p] *= jw_phase(p);
  return out;
}

QubitDensity jw_map_operator(const FockOperator& rho) {
  if (rho.basis != BasisTag::Canonical)
    throw std::invalid_argument("Jordan-Wigner map acts on the canonical basis");
  QubitDensity out;
  out.n_qubits = rho.mode_count();
  out.mat = rho.entries;
  for (std::uint32_t r = 0; r < rho.dim(); ++r)
    for (std::uint32_t c = 0; c < rho.dim(); ++c)
      out.mat(r, c) *= jw_phase(r) * jw_phase(c);
  return out;
}

QubitDensity qubit_ptrace(const QubitDensity& rho,
                          const std::vector<int>& traced) {
  std::uint32_t traced_mask = 0;
  for (int q : traced) {
    if (q < 1 || q > rho.n_qubits)
      throw std::invalid_argument("traced qubit out of range");
    traced_mask |= std::uint32_t{1} << (q - 1);
  }
  const int kept = rho.n_qubits - std::popcount(traced_mask);
  const std::uint32_t dim = std::uint32_t{1} << rho.n_qubits;
  const std::uint32_t kept_dim = std::uint32_t{1} << kept;

  auto compress = [&](std::uint32_t full) {
    std::uint32_t out = 0;
    int bit = 0;
    for (int i = 0; i < rho.n_qubits; ++i) {
      if (traced_mask >> i & 1u) continue;
      if (full >> i & 1u) out |= std::uint32_t{1} << bit;
      ++bit;
    }
    return out;
  };

  QubitDensity out;
  out.n_qubits = kept;
  out.mat = Matrix::Zero(kept_dim, kept_dim);
  for (std::uint32_t r = 0; r < dim; ++r)
    for (std::uint32_t c = 0; c < dim; ++c) {
      if ((r & traced_mask) != (c & traced_mask)) continue;
      out.mat(compress(r), compress(c)) += rho.mat(r, c);
    }
  return out;
}

InconsistencyReport demonstrate_inconsistency(const FockOperator& rho,
                                              const ModeList& traced) {
  std::vector<int> traced_positions;
  for (Mode m : traced) {
    auto it = std::find(rho.modes.begin(), rho.modes.end(), m);
    if (it == rho.modes.end())
      throw std::invalid_argument("traced mode not present");
    traced_positions.push_back(
        static_cast<int>(it - rho.modes.begin()) + 1);
  }

  InconsistencyReport report;
  report.fermionic_route = jw_map_operator(ptrace(rho, traced));
  report.qubit_route = qubit_ptrace(jw_map_operator(rho), traced_positions);

  auto spectrum = [](const QubitDensity& d) -> RealVector {
    Eigen::SelfAdjointEigenSolver<Matrix> solver((d.mat + d.mat.adjoint()) /
                                                 2.0);
    return solver.eigenvalues().reverse();
  };
  report.fermionic_spectrum = spectrum(report.fermionic_route);
  report.qubit_spectrum = spectrum(report.qubit_route);
  report.fermionic_entropy = entropy_of_spectrum(report.fermionic_spectrum);
  report.qubit_entropy = entropy_of_spectrum(report.qubit_spectrum);
  report.divergence = (report.fermionic_route.mat - report.qubit_route.mat)
                          .cwiseAbs()
                          .maxCoeff();
  return report;
}

}  // namespace fermiqit
