// channels.hpp
// SSR quantum operations in three equivalent forms: Kraus application,
// Choi construction with CP verification, and Stinespring dilation, with
// round-trip converters between them.

#pragma once

#include <functional>
#include <vector>

#include "fermiqit/fock.hpp"
#include "fermiqit/ssr.hpp"
#include "fermiqit/types.hpp"

namespace fermiqit {

// Operator-sum representation. Every Kraus operator must carry a definite
// block form (diagonal or anti-diagonal); construction rejects anything
// else. sum E^+ E may be the identity (trace preserving) or strictly below
// it (selective operation), never above.
class KrausChannel {
 public:
  KrausChannel(int n_modes, std::vector<Matrix> kraus,
               double tol = kDefaultTol);

  static KrausChannel identity_channel(int n_modes);
  // {P_even, P_odd}: projects out cross-parity coherence, fixes SSR states.
  static KrausChannel parity_dephasing(int n_modes);

  int mode_count() const { return n_modes_; }
  std::size_t dim() const { return std::size_t{1} << n_modes_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const std::vector<BlockKind>& kinds() const { return kinds_; }
  const ModeList& modes() const { return modes_; }
  bool trace_preserving(double tol = kDefaultTol) const;
  // max-abs deviation of sum E^+ E from the identity.
  double completeness_defect() const;

 private:
  int n_modes_;
  ModeList modes_;  // 1..N
  std::vector<Matrix> kraus_;
  std::vector<BlockKind> kinds_;
};

FockOperator apply_kraus(const KrausChannel& ch, const FockOperator& rho);

enum class ChoiConvention {
  UnitAlpha,   // |alpha> normalized: prefactor 2^(-N/2), recovery factor 2^N
  UnnormalizedAlpha,  // prefactor 2^(-N), recovery factor 2^(2N)
};

// sigma = (phi ^ I_N)(|alpha><alpha|) on the doubled 2N-mode space, with
// |alpha> = c sum_i |i_H> ^ |i_L> over matching basis pairs.
struct ChoiState {
  int n_modes = 0;
  FockOperator sigma;  // canonical basis on modes 1..2N
  ChoiConvention convention = ChoiConvention::UnitAlpha;
};

ChoiState choi_of_channel(const KrausChannel& ch);
// Choi state of an arbitrary linear map given entrywise on canonical-basis
// operators of n_modes. Used for the axiomatic CP test.
ChoiState choi_of_map(int n_modes,
                      const std::function<Matrix(const Matrix&)>& phi);

// Recover the channel action on a pure SSR state from a Choi state:
// phi(|eta><eta|) = (1/c^2) <eta~| sigma |eta~> with |eta~> the
// amplitude-conjugated twin of |eta> on the doubled modes.
Matrix choi_apply_pure(const ChoiState& choi, const FockState& eta);

// Eigendecompose sigma within its parity sectors and emit one Kraus
// operator per eigenvalue above tol. Throws SsrError when sigma is not PSD
// or not block diagonal.
KrausChannel kraus_from_choi(const ChoiState& choi, double tol = 1e-9);

// Environment mode count K, environment state, and global SSR unitary on
// N + K modes (system modes 1..N, environment N+1..N+K).
struct StinespringDilation {
  int n_modes = 0;
  int env_modes = 0;
  FockState env_state;    // pure SSR state of the environment
  FockOperator unitary;   // SSR (block-diagonal) unitary on N+K modes
};

StinespringDilation stinespring_from_kraus(const KrausChannel& ch,
                                           double tol = kDefaultTol);
KrausChannel kraus_from_stinespring(const StinespringDilation& dilation,
                                    double tol = kDefaultTol);
// Tr_env(U (rho ^ omega) U^+).
FockOperator apply_stinespring(const StinespringDilation& dilation,
                               const FockOperator& rho);

struct AxiomReport {
  double max_trace_deviation = 0.0;
  double max_convexity_deviation = 0.0;
  double min_choi_eigenvalue = 0.0;
  bool trace_preserving = false;
  bool convex_linear = false;
  bool completely_positive = false;

  bool all_pass() const {
    return trace_preserving && convex_linear && completely_positive;
  }
};

AxiomReport verify_axioms(const KrausChannel& ch, int trials,
                          std::uint64_t seed = 0x5eed,
                          double tol = kDefaultTol);
AxiomReport verify_map_axioms(int n_modes,
                              const std::function<Matrix(const Matrix&)>& phi,
                              int trials, std::uint64_t seed = 0x5eed,
                              double tol = kDefaultTol);

}  // namespace fermiqit
