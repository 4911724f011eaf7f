// entanglement.hpp
// Correlation structure under the parity SSR: Schmidt decomposition,
// purification, uncorrelatedness tests in their three inequivalent
// definitions, and Von Neumann entropy.

#pragma once

#include <cstdint>

#include "fermiqit/fock.hpp"
#include "fermiqit/types.hpp"

namespace fermiqit {

struct SchmidtDecomposition {
  RealVector coeffs;             // probabilities, descending
  std::vector<FockState> left;   // orthonormal, definite parity, on A
  std::vector<FockState> right;  // orthonormal, definite parity, on B

  std::size_t schmidt_number() const { return left.size(); }
};

// Decomposition psi = sum_i sqrt(p_i) |i>_A ^ |i>_B, built from the
// eigenvectors of the A-marginal and partial inner products rather than a
// tensor-reshape SVD.
SchmidtDecomposition schmidt(const FockState& psi, const ModeList& a_modes,
                             double tol = kDefaultTol);
FockState reconstruct(const SchmidtDecomposition& dec);

// Even-parity pure state on system + fresh environment modes whose
// environment trace equals rho.
FockState purify(const FockOperator& rho, double tol = kDefaultTol);

enum class UncorrelatedDefinition {
  LocalHermitian,    // (i)   factorization over all local Hermitian pairs
  ProductForm,       // (ii)  rho_AB equals rho_A ^ rho_B
  LocalObservables,  // (iii) factorization over SSR local observables only
};

struct UncorrelatedOptions {
  int trials = 200;            // randomized factorization probes
  std::uint64_t seed = 0x5eed;
  bool spanning = true;        // also sweep a deterministic spanning basis
  double tol = kDefaultTol;
};

struct UncorrelatedVerdict {
  bool uncorrelated = false;
  double witness = 0.0;  // maximal factorization deviation observed

  explicit operator bool() const { return uncorrelated; }
};

UncorrelatedVerdict is_uncorrelated(const FockOperator& rho_ab,
                                    const ModeList& a_modes,
                                    UncorrelatedDefinition definition,
                                    const UncorrelatedOptions& options = {});

// -sum_i lambda_i log2 lambda_i, with 0 log 0 = 0. Throws on eigenvalues
// below -tol.
double von_neumann_entropy(const FockOperator& rho, double tol = kDefaultTol);
double entropy_of_spectrum(const RealVector& spectrum, double tol = kDefaultTol);

}  // namespace fermiqit
