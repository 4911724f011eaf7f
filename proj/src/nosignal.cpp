#include "fermiqit/nosignal.hpp"

#include <array>

namespace fermiqit {

namespace {

void require_unitary(const FockOperator& u, const char* who) {
  const Matrix id = Matrix::Identity(u.entries.rows(), u.entries.cols());
  if ((u.entries * u.entries.adjoint() - id).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument(std::string(who) + " is not unitary");
}

}  // namespace

ProtocolResult run_protocol(const FockOperator& rho_ab,
                            const FockOperator& u_a,
                            const std::optional<FockOperator>& u_b) {
  require_unitary(u_a, "U_A");
  if (u_b) {
    require_unitary(*u_b, "U_B");
    WedgePlan disjointness_check(u_a.modes, u_b->modes);  // throws on overlap
    (void)disjointness_check;
  }

  // Each party's operation acts through its own modes' ladder operators
  // (the local factor leads the wedge); disjoint anti-diagonal operators
  // embedded this way anticommute, which is what flips the qubit.
  const Matrix ua = embed(u_a, rho_ab.modes).entries;
  const std::optional<Matrix> ub =
      u_b ? std::optional<Matrix>(embed(*u_b, rho_ab.modes).entries)
          : std::nullopt;
  if (ua.rows() != rho_ab.entries.rows())
    throw std::invalid_argument("operator dimensions do not match the state");

  // Hybrid state |+><+|_Q (x) rho_AB, stored as four fermionic blocks.
  const Matrix& rho = rho_ab.entries;
  std::array<std::array<Matrix, 2>, 2> block;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) block[i][j] = 0.5 * rho;

  auto apply_everywhere = [&](const Matrix& g) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        block[i][j] = g * block[i][j] * g.adjoint();
  };
  // Controlled gate |0><0| (x) I + |1><1| (x) G.
  auto apply_controlled = [&](const Matrix& g) {
    block[0][1] = block[0][1] * g.adjoint();
    block[1][0] = g * block[1][0];
    block[1][1] = g * block[1][1] * g.adjoint();
  };

  if (ub) apply_everywhere(*ub);                       // step 1
  apply_controlled(ua);                                // step 2
  if (ub) apply_everywhere(ub->adjoint());             // step 3
  apply_controlled(ua.adjoint());                      // step 4

  ProtocolResult result;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) result.qubit(i, j) = block[i][j].trace();
  result.fermionic = FockOperator(rho_ab.modes, block[0][0] + block[1][1]);
  return result;
}

double signal_strength(const Eigen::Matrix2cd& qubit) {
  // <-|out|-> with |-> = (|0> - |1>)/sqrt(2).
  const Complex v =
      (qubit(0, 0) - qubit(0, 1) - qubit(1, 0) + qubit(1, 1)) / 2.0;
  return v.real();
}

}  // namespace fermiqit
