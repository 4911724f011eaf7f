#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fermiqit/nosignal.hpp"
#include "fermiqit/sampling.hpp"
#include "fermiqit/ssr.hpp"
#include "test_helpers.hpp"

using namespace fermiqit;
using namespace fermiqit::testing;

namespace {

Eigen::Matrix2cd plus_state() {
  Eigen::Matrix2cd m;
  m << 0.5, 0.5, 0.5, 0.5;
  return m;
}

Eigen::Matrix2cd minus_state() {
  Eigen::Matrix2cd m;
  m << 0.5, -0.5, -0.5, 0.5;
  return m;
}

}  // namespace

TEST_CASE("signal strength of reference states") {
  CHECK(signal_strength(plus_state()) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(signal_strength(minus_state()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(signal_strength(Eigen::Matrix2cd::Identity() / 2.0) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("idle Bob leaves the qubit in plus") {
  Rng rng(91);
  const FockOperator rho = random_ssr_state(rng, modes_upto(2));
  const FockOperator u_a = random_antidiagonal_unitary(rng, {1});
  const FockOperator lifted_ua(ModeList{1},
                               u_a.entries);  // acts on mode 1 of two
  const ProtocolResult result = run_protocol(rho, lifted_ua, std::nullopt);
  CHECK((result.qubit - plus_state()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(max_abs_diff(result.fermionic.entries, rho.entries) < 1e-14);
}

TEST_CASE("anti-diagonal pairs flip the qubit to minus") {
  Rng rng(92);
  for (int t = 0; t < 20; ++t) {
    const FockOperator rho = random_ssr_state(rng, modes_upto(4));
    const FockOperator u_a = random_antidiagonal_unitary(rng, {1, 2});
    const FockOperator u_b = random_antidiagonal_unitary(rng, {3, 4});
    const ProtocolResult result = run_protocol(rho, u_a, u_b);
    CHECK((result.qubit - minus_state()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(signal_strength(result.qubit) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(max_abs_diff(result.fermionic.entries, rho.entries) < 1e-10);
  }
}

TEST_CASE("block-diagonal Bob cannot signal") {
  Rng rng(93);
  for (int t = 0; t < 20; ++t) {
    const FockOperator rho = random_ssr_state(rng, modes_upto(4));
    const FockOperator u_a = random_antidiagonal_unitary(rng, {1, 2});
    const FockOperator u_b = random_ssr_unitary(rng, {3, 4});
    const ProtocolResult result = run_protocol(rho, u_a, u_b);
    CHECK(signal_strength(result.qubit) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK((result.qubit - plus_state()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(max_abs_diff(result.fermionic.entries, rho.entries) < 1e-10);
  }
}

TEST_CASE("asymmetric mode counts work") {
  Rng rng(94);
  const FockOperator rho = random_ssr_state(rng, modes_upto(3));
  const FockOperator u_a = random_antidiagonal_unitary(rng, {1});
  const FockOperator u_b = random_antidiagonal_unitary(rng, {2, 3});
  const ProtocolResult result = run_protocol(rho, u_a, u_b);
  CHECK(signal_strength(result.qubit) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("embedded locals anticommute exactly when both are odd") {
  Rng rng(95);
  const ModeList global = modes_upto(4);
  const Matrix c =
      embed(random_antidiagonal_unitary(rng, {1, 2}), global).entries;
  const Matrix d =
      embed(random_antidiagonal_unitary(rng, {3, 4}), global).entries;
  CHECK(max_abs_diff(Matrix(c * d), Matrix(-d * c)) < 1e-12);
}

TEST_CASE("non-unitary inputs are rejected") {
  Rng rng(96);
  const FockOperator rho = random_ssr_state(rng, modes_upto(2));
  Matrix not_unitary = Matrix::Zero(2, 2);
  not_unitary(0, 0) = 0.5;
  CHECK_THROWS_AS(
      run_protocol(rho, FockOperator({1}, not_unitary), std::nullopt),
      std::invalid_argument);
}
