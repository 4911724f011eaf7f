#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "fermiqit/ptrace.hpp"
#include "fermiqit/sampling.hpp"
#include "fermiqit/ssr.hpp"
#include "test_helpers.hpp"

using namespace fermiqit;
using namespace fermiqit::testing;

namespace {

FockOperator monomial(const ModeList& modes, std::uint32_t ket,
                      std::uint32_t bra) {
  return outer(FockState::basis_state(modes, ket),
               FockState::basis_state(modes, bra));
}

}  // namespace

TEST_CASE("single-mode trace on monomials") {
  // f1^+ f2^+ |vac><vac| f2 f1 is the projector onto |1^2>.
  const FockOperator pair = monomial({1, 2}, 3, 3);

  const FockOperator keep1 = ptrace_mode(pair, 2);
  CHECK(keep1.modes == ModeList{1});
  CHECK(max_abs_diff(keep1.entries, monomial({1}, 1, 1).entries) == 0.0);

  const FockOperator keep2 = ptrace_mode(pair, 1);
  CHECK(keep2.modes == ModeList{2});
  CHECK(max_abs_diff(keep2.entries, monomial({2}, 1, 1).entries) == 0.0);

  // Off-diagonal in the traced mode vanishes.
  const FockOperator off = monomial({1, 2}, 1, 2);  // |1><2|
  CHECK(ptrace_mode(off, 1).entries.cwiseAbs().maxCoeff() == 0.0);

  // Sign rule: Tr_1(|1^2><1|) has k = 1, so the sign flips.
  const FockOperator flip = ptrace_mode(monomial({1, 2}, 3, 1), 1);
  CHECK(max_abs_diff(flip.entries, Matrix(-monomial({2}, 1, 0).entries)) ==
        0.0);

  CHECK_THROWS_AS(ptrace_mode(pair, 5), std::invalid_argument);
}

TEST_CASE("multi-mode trace composition basics") {
  Rng rng(41);
  const FockOperator rho = random_ssr_state(rng, modes_upto(3));
  CHECK(max_abs_diff(ptrace(rho, {}).entries, rho.entries) == 0.0);

  const FockOperator full = ptrace(rho, rho.modes);
  CHECK(full.dim() == 1);
  CHECK(std::abs(full.entries(0, 0) - Complex{1.0}) < 1e-12);

  CHECK_THROWS_AS(ptrace(rho, {9}), std::invalid_argument);
  CHECK_THROWS_AS(ptrace(rho, {1, 1}), std::invalid_argument);
}

TEST_CASE("trace preservation on arbitrary operators") {
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    const FockOperator rho(modes_upto(4), random_matrix(rng, 16, 16));
    const FockOperator reduced = ptrace(rho, {2, 4});
    CHECK(std::abs(reduced.entries.trace() - rho.entries.trace()) < 1e-12);
  }
}

TEST_CASE("partial tracing is order independent") {
  Rng rng(43);
  const FockOperator rho(modes_upto(5), random_matrix(rng, 32, 32));
  ModeList order = {1, 3, 4};
  Matrix reference;
  bool have_reference = false;
  std::sort(order.begin(), order.end());
  do {
    FockOperator out = rho;
    for (Mode m : order) out = ptrace_mode(out, m);
    if (!have_reference) {
      reference = out.entries;
      have_reference = true;
    } else {
      CHECK(max_abs_diff(out.entries, reference) < 1e-12);
    }
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("SSR closure of the reduced state") {
  Rng rng(44);
  for (int t = 0; t < 10; ++t) {
    const FockOperator rho = random_ssr_state(rng, modes_upto(4));
    const FockOperator reduced = ptrace(rho, {2, 3});
    CHECK(is_ssr_state(reduced, 1e-9).ok);
  }
}

TEST_CASE("marginals of SSR pure states share a spectrum") {
  Rng rng(45);
  for (int t = 0; t < 25; ++t) {
    const FockState psi = random_ssr_pure(rng, modes_upto(4));
    const FockOperator rho = outer(psi, psi);
    const FockOperator rho_a = ptrace(rho, {3, 4});
    const FockOperator rho_b = ptrace(rho, {1, 2});
    Eigen::SelfAdjointEigenSolver<Matrix> sa(rho_a.entries);
    Eigen::SelfAdjointEigenSolver<Matrix> sb(rho_b.entries);
    CHECK(max_abs_diff(Vector(sa.eigenvalues().cast<Complex>()),
                       Vector(sb.eigenvalues().cast<Complex>())) < 1e-9);
  }
}

TEST_CASE("partial trace of a wedge product factorizes") {
  Rng rng(46);
  for (int t = 0; t < 20; ++t) {
    const FockOperator a({1, 4}, random_matrix(rng, 4, 4));
    const FockOperator b({2, 3}, random_matrix(rng, 4, 4));
    const FockOperator joint = wedge(a, b);
    const FockOperator reduced = ptrace(joint, {2, 3});
    const Matrix expected = a.entries * b.entries.trace();
    CHECK(max_abs_diff(reduced.entries, expected) < 1e-11);
  }
}

TEST_CASE("product trace shortcut on fixed examples") {
  // Tr_B(|vac><vac|_A ^ |1><1|_B) = |vac><vac|_A
  const FockState vac_a = FockState::vacuum({1});
  const FockState one_b = FockState::basis_state({2}, 1);
  const FockOperator kept =
      product_trace_shortcut(vac_a, vac_a, one_b, one_b, false);
  CHECK(max_abs_diff(kept.entries, outer(vac_a, vac_a).entries) == 0.0);

  // Tr_A(|1><1|_A ^ |vac><2^3|_B) = |vac><2^3|_B
  const FockState one_a = FockState::basis_state({1}, 1);
  const FockState vac_b = FockState::vacuum({2, 3});
  const FockState both_b = FockState::basis_state({2, 3}, 3);
  const FockOperator traced =
      product_trace_shortcut(one_a, one_a, vac_b, both_b, true);
  CHECK(max_abs_diff(traced.entries, outer(vac_b, both_b).entries) == 0.0);

  // Rejects parity superpositions.
  Vector cat(2);
  cat << 1.0, 1.0;
  CHECK_THROWS_AS(product_trace_shortcut(FockState({1}, cat), one_a, vac_b,
                                         vac_b, true),
                  SsrError);

  // Rejects parity-unbalanced monomials, where the sign cancellation fails.
  const FockState one23 = FockState::basis_state({2, 3}, 1);
  CHECK_THROWS_AS(product_trace_shortcut(one_a, one_a, vac_b, one23, true),
                  SsrError);
}

TEST_CASE("product trace shortcut agrees with the monomial rule") {
  Rng rng(47);
  const ModeList a_modes = {1, 3};
  const ModeList b_modes = {2, 4};
  std::uniform_int_distribution<int> coin(0, 1);
  for (int t = 0; t < 50; ++t) {
    // Parity-balanced monomials: the only kind an SSR operator contains.
    const int pa = coin(rng), pb = coin(rng), pc = coin(rng);
    const int pd = (pa + pc + pb) % 2;
    const FockState a = random_ssr_pure(rng, a_modes, pa == 0);
    const FockState b = random_ssr_pure(rng, a_modes, pb == 0);
    const FockState c = random_ssr_pure(rng, b_modes, pc == 0);
    const FockState d = random_ssr_pure(rng, b_modes, pd == 0);
    const FockOperator joint = wedge(outer(a, b), outer(c, d));

    const FockOperator via_rule = ptrace(joint, a_modes);
    const FockOperator via_shortcut =
        product_trace_shortcut(a, b, c, d, true);
    CHECK(max_abs_diff(via_rule.entries, via_shortcut.entries) < 1e-12);

    const FockOperator via_rule_b = ptrace(joint, b_modes);
    const FockOperator via_shortcut_b =
        product_trace_shortcut(a, b, c, d, false);
    CHECK(max_abs_diff(via_rule_b.entries, via_shortcut_b.entries) < 1e-12);
  }
}

TEST_CASE("consistency check singles out the true marginal") {
  Rng rng(48);
  const FockOperator rho_ab = random_ssr_state(rng, modes_upto(4));
  const ModeList a_modes = {1, 2};
  const FockOperator rho_a = ptrace(rho_ab, {3, 4});

  CHECK(consistency_check(rho_ab, rho_a, a_modes, 100, 7) < 1e-10);

  // A product state is consistent to machine precision.
  const FockOperator prod = wedge(random_ssr_state(rng, {1, 2}),
                                  random_ssr_state(rng, {3, 4}));
  const FockOperator prod_a = ptrace(prod, {3, 4});
  CHECK(consistency_check(prod, prod_a, a_modes, 100, 8) < 1e-12);

  // Corrupt the marginal by swapping two eigenvalues.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_a.entries);
  RealVector evals = solver.eigenvalues();
  std::swap(evals[0], evals[3]);
  const Matrix corrupted = solver.eigenvectors() * evals.asDiagonal() *
                           solver.eigenvectors().adjoint();
  CHECK(consistency_check(rho_ab, FockOperator(a_modes, corrupted), a_modes,
                          100, 9) > 0.01);
}
