// ptrace.hpp
// The unique SSR-consistent fermionic partial trace. A monomial
// (f1^+)^s1..(fN^+)^sN |vac><vac| fN^rN..f1^r1 traced over mode m maps to
// delta(s_m, r_m) (-1)^k times the monomial with mode m deleted, where
// k = s_m * (occupied s-modes above m) + r_m * (occupied r-modes above m).

#pragma once

#include <cstdint>

#include "fermiqit/fock.hpp"
#include "fermiqit/types.hpp"

namespace fermiqit {

FockOperator ptrace_mode(const FockOperator& rho, Mode m);

// Composition of single-mode traces; the result does not depend on the
// order in which the modes of `traced` are visited.
FockOperator ptrace(const FockOperator& rho, const ModeList& traced);

// Tr over the a/b factor of |a><b| ^ |c><d| for SSR pure states on disjoint
// mode sets: <b|a> |c><d|. With trace_first = false the c/d factor is traced
// instead, giving <d|c> |a><b|.
FockOperator product_trace_shortcut(const FockState& a, const FockState& b,
                                    const FockState& c, const FockState& d,
                                    bool trace_first = true);

// Max |Tr((O_A ^ I) rho_AB) - Tr(O_A rho_A)| over `trials` random SSR local
// observables O_A. Near zero exactly when rho_A is the partial trace of
// rho_AB over the complement of a_modes.
double consistency_check(const FockOperator& rho_ab, const FockOperator& rho_a,
                         const ModeList& a_modes, int trials,
                         std::uint64_t seed = 0x5eed);

}  // namespace fermiqit
