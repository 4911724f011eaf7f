// sampling.hpp
// Seeded random generators for states, operators, unitaries and channels.
// Used by the randomized verification routines and the test suites.

#pragma once

#include <random>

#include "fermiqit/fock.hpp"
#include "fermiqit/ssr.hpp"
#include "fermiqit/types.hpp"

namespace fermiqit {

class KrausChannel;

using Rng = std::mt19937_64;

// Entries drawn from a standard complex Gaussian.
Matrix random_matrix(Rng& rng, std::int64_t rows, std::int64_t cols);
Matrix random_hermitian(Rng& rng, std::int64_t dim);
// Haar-distributed via QR of a Gaussian matrix.
Matrix random_unitary_matrix(Rng& rng, std::int64_t dim);

// Hermitian and block diagonal: a physical observable.
FockOperator random_ssr_observable(Rng& rng, const ModeList& modes);
// Gaussian pure state of a random (or given) definite parity.
FockState random_ssr_pure(Rng& rng, const ModeList& modes);
FockState random_ssr_pure(Rng& rng, const ModeList& modes, bool even);
// Convex mixture of parity-sector projectors: Hermitian, PSD, unit trace,
// block diagonal.
FockOperator random_ssr_state(Rng& rng, const ModeList& modes);
// Block-diagonal unitary (physical) and anti-diagonal unitary (the
// no-signaling violator).
FockOperator random_ssr_unitary(Rng& rng, const ModeList& modes);
FockOperator random_antidiagonal_unitary(Rng& rng, const ModeList& modes);

// Trace-preserving channel with n_kraus SSR-respecting Kraus operators of
// random block form, normalized through S^(-1/2) with S = sum E^+ E.
KrausChannel random_ssr_channel(Rng& rng, int n_modes, int n_kraus);

}  // namespace fermiqit
