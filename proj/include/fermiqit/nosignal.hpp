// nosignal.hpp
// Four-step interferometric protocol on a qubit coupled to a bipartite
// fermionic register. With anti-diagonal local unitaries on both sides the
// qubit flips from |+> to |->, letting one party signal the other without
// interaction; block-diagonal unitaries leave the qubit untouched.

#pragma once

#include <optional>

#include <Eigen/Dense>

#include "fermiqit/fock.hpp"
#include "fermiqit/types.hpp"

namespace fermiqit {

struct ProtocolResult {
  Eigen::Matrix2cd qubit;   // reduced qubit state after step 4
  FockOperator fermionic;   // reduced fermionic state after step 4
};

// rho_ab lives on the union of u_a's and u_b's modes (u_b optional: an
// absent Bob leaves his modes untouched). u_a and u_b must be unitary as
// matrices; anti-diagonal block forms are deliberately accepted here.
ProtocolResult run_protocol(const FockOperator& rho_ab,
                            const FockOperator& u_a,
                            const std::optional<FockOperator>& u_b);

// <-(|out|)-> in [0,1]: 0 means the qubit stayed |+>, 1 means it flipped.
double signal_strength(const Eigen::Matrix2cd& qubit);

}  // namespace fermiqit
