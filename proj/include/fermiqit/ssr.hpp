// ssr.hpp
// Parity super-selection structure: the parity-sorted basis, block-form
// classification of operators, and validation of physical states,
// observables, projectors and unitaries.

#pragma once

#include "fermiqit/fock.hpp"
#include "fermiqit/types.hpp"

namespace fermiqit {

// Permutation sending the canonical basis to the parity-sorted basis:
// even-parity patterns first, odd after, stable within each class.
struct ParityBasisMap {
  int n_modes = 0;
  std::vector<std::size_t> order;     // order[k] = canonical index at position k
  std::vector<std::size_t> position;  // inverse of order

  std::size_t dim() const { return order.size(); }
  // Number of even-parity patterns: 2^(N-1) for N >= 1, 1 for N = 0.
  std::size_t even_dim() const;

  static const ParityBasisMap& get(int n_modes);  // cached per N
};

enum class BlockKind { BlockDiagonal, BlockAntiDiagonal, Neither };

// The four parity blocks of an operator in the parity-sorted basis.
// Reassembling them always reproduces the source operator exactly.
struct BlockForm {
  BlockKind kind = BlockKind::Neither;
  Matrix ee, eo, oe, oo;
};

FockOperator to_parity_basis(const FockOperator& op);
FockOperator from_parity_basis(const FockOperator& op);
FockState to_parity_basis(const FockState& st);
FockState from_parity_basis(const FockState& st);

BlockForm classify_operator(const FockOperator& op, double tol = kDefaultTol);

// Inverse of classification: build a canonical-basis operator from parity
// blocks.
FockOperator assemble_block_diagonal(const ModeList& modes, const Matrix& ee,
                                     const Matrix& oo);
FockOperator assemble_block_antidiagonal(const ModeList& modes,
                                         const Matrix& eo, const Matrix& oe);

struct SsrVerdict {
  bool ok = false;
  std::string failure;  // first violated condition, empty when ok
  double detail = 0.0;  // magnitude of the violation

  explicit operator bool() const { return ok; }
};

// Density operator test: Hermitian, positive semi-definite (min eigenvalue
// >= -tol), unit trace, block diagonal.
SsrVerdict is_ssr_state(const FockOperator& rho, double tol = kDefaultTol);

bool is_ssr_observable(const FockOperator& a, double tol = kDefaultTol);
bool is_ssr_projector(const FockOperator& p, double tol = kDefaultTol);
// Anti-diagonal unitaries are rejected: only block-diagonal ones are physical.
bool is_ssr_unitary(const FockOperator& u, double tol = kDefaultTol);

// True when a pure state has definite particle-number parity.
bool has_definite_parity(const FockState& st, double tol = kDefaultTol);

// 0 for even, 1 for odd; throws SsrError when the state has support in
// both sectors.
int definite_parity(const FockState& st, double tol = kDefaultTol);

}  // namespace fermiqit
