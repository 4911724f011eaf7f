// jordan_wigner.hpp
// The canonical Jordan-Wigner map onto a qubit register, the standard
// distinguishable-system partial trace, and the side-by-side comparison
// showing where qubit-side tracing disagrees with the fermionic one.
//
// Mode i maps to qubit i; basis pattern s maps to the computational state
// |s1 s2 .. sN> with phase (-1)^(particle number), so odd states pick up a
// global minus sign. On density matrices of definite-parity states those
// phases cancel and the map is entrywise the identity.

#pragma once

#include "fermiqit/fock.hpp"
#include "fermiqit/types.hpp"

namespace fermiqit {

struct QubitState {
  int n_qubits = 0;
  Vector amps;  // computational basis, qubit 1 = least significant bit
};

struct QubitDensity {
  int n_qubits = 0;
  Matrix mat;
};

QubitState jw_map_state(const FockState& psi);
QubitDensity jw_map_operator(const FockOperator& rho);

// Standard tensor-factor partial trace over the given qubits (1-based).
QubitDensity qubit_ptrace(const QubitDensity& rho,
                          const std::vector<int>& traced);

struct InconsistencyReport {
  QubitDensity fermionic_route;  // JW applied after the fermionic trace
  QubitDensity qubit_route;      // qubit trace applied after JW
  RealVector fermionic_spectrum;
  RealVector qubit_spectrum;
  double fermionic_entropy = 0.0;
  double qubit_entropy = 0.0;
  double divergence = 0.0;  // max-abs difference between the two matrices
};

InconsistencyReport demonstrate_inconsistency(const FockOperator& rho,
                                              const ModeList& traced);

}  // namespace fermiqit
