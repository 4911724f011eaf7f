#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "fermiqit/fock.hpp"
#include "fermiqit/sampling.hpp"
#include "test_helpers.hpp"

using namespace fermiqit;
using namespace fermiqit::testing;

TEST_CASE("pattern indexing follows the canonical listing") {
  CHECK(pattern_index(OccPattern::from_string("000")) == 0);  // vacuum first
  CHECK(pattern_index(OccPattern::from_string("110")) == 3);  // |1^2| at slot 4
  CHECK(pattern_index(OccPattern::from_string("100")) == 1);
  CHECK(pattern_index(OccPattern::from_string("001")) == 4);
  CHECK(index_pattern(5, 3).to_string() == "101");
  CHECK_THROWS_AS(index_pattern(8, 3), std::out_of_range);

  for (int n = 0; n <= 6; ++n)
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i)
      CHECK(pattern_index(index_pattern(i, n)) == i);
}

TEST_CASE("occupation pattern parsing rejects junk") {
  CHECK_THROWS_AS(OccPattern::from_string("10x"), std::invalid_argument);
  CHECK(OccPattern::from_string("0110").particle_number() == 2);
  CHECK(OccPattern::from_string("0110").even());
  CHECK_FALSE(OccPattern::from_string("100").even());
}

TEST_CASE("vacuum overlap determinant values") {
  CHECK(vacuum_overlap({}, {}) == Complex{1.0});
  CHECK(vacuum_overlap({1}, {2}) == Complex{0.0});
  CHECK(vacuum_overlap({1, 2}, {2, 1}) == Complex{-1.0});
  CHECK(vacuum_overlap({1, 2}, {1, 2}) == Complex{1.0});
  CHECK(vacuum_overlap({1}, {1, 2}) == Complex{0.0});
  CHECK(vacuum_overlap({1, 1}, {1, 1}) == Complex{0.0});
  CHECK(vacuum_overlap({3, 1, 2}, {1, 2, 3}) == Complex{1.0});  // cyclic, even
}

TEST_CASE("vacuum overlap agrees with brute-force operator application") {
  // Exact: every value is -1, 0 or +1 and double arithmetic on them is exact.
  const ModeList modes = modes_upto(4);
  std::vector<std::vector<Mode>> lists = {{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<Mode>> next;
    for (const auto& base : lists)
      if (static_cast<int>(base.size()) == len - 1)
        for (Mode m = 1; m <= 4; ++m) {
          auto ext = base;
          ext.push_back(m);
          next.push_back(ext);
        }
    lists.insert(lists.end(), next.begin(), next.end());
  }
  auto build = [&](const std::vector<Mode>& labels) {
    // f_{l1}^+ f_{l2}^+ ... |vac>: rightmost acts first.
    FockState st = FockState::vacuum(modes);
    for (auto it = labels.rbegin(); it != labels.rend(); ++it)
      st = apply_creation(st, *it);
    return st;
  };
  for (const auto& left : lists)
    for (const auto& right : lists) {
      const Complex expected = inner(build(left), build(right));
      const Complex got = vacuum_overlap(left, right);
      CHECK(got == expected);
    }
}

TEST_CASE("creation and annihilation phases") {
  const ModeList modes = modes_upto(2);
  const FockState vac = FockState::vacuum(modes);

  const FockState one = apply_creation(vac, 1);
  CHECK(one.amps[1] == Complex{1.0});  // f1^+ |vac> = +|1>

  const FockState f2f1 = apply_creation(apply_creation(vac, 2), 1);
  const FockState f1f2 = apply_creation(apply_creation(vac, 1), 2);
  CHECK(max_abs_diff(f2f1.amps, Vector(-f1f2.amps)) == 0.0);  // anticommute

  CHECK(apply_annihilation(vac, 1).norm() == 0.0);  // kills the vacuum
  CHECK_THROWS_AS(apply_creation(vac, 7), std::invalid_argument);
}

TEST_CASE("anticommutation relations as matrix identities") {
  const ModeList modes = modes_upto(4);
  const auto dim = std::int64_t{1} << 4;
  const Matrix id = Matrix::Identity(dim, dim);
  for (Mode i = 1; i <= 4; ++i)
    for (Mode j = 1; j <= 4; ++j) {
      const Matrix fi = annihilation_matrix(modes, i).entries;
      const Matrix fj = annihilation_matrix(modes, j).entries;
      const Matrix fjd = creation_matrix(modes, j).entries;
      CHECK((fi * fj + fj * fi).cwiseAbs().maxCoeff() < 1e-12);
      const Matrix mixed = fi * fjd + fjd * fi;
      const Matrix expected = (i == j) ? id : Matrix(Matrix::Zero(dim, dim));
      CHECK(max_abs_diff(mixed, expected) < 1e-12);
    }
}

TEST_CASE("vacuum projector from the full ladder string") {
  // |vac><vac| = f_N..f_1 f_1^+..f_N^+
  for (int n = 1; n <= 5; ++n) {
    const ModeList modes = modes_upto(n);
    const auto dim = std::int64_t{1} << n;
    Matrix prod = Matrix::Identity(dim, dim);
    for (int j = n; j >= 1; --j)
      prod = creation_matrix(modes, j).entries * prod;  // f_1^+ .. f_N^+
    for (int j = 1; j <= n; ++j)
      prod = annihilation_matrix(modes, j).entries * prod;  // f_N .. f_1
    Matrix vac_proj = Matrix::Zero(dim, dim);
    vac_proj(0, 0) = 1.0;
    CHECK(max_abs_diff(prod, vac_proj) < 1e-12);
  }
}

TEST_CASE("state wedge basics") {
  const FockState vac0 = FockState::vacuum({});
  Rng rng(7);
  const FockState psi = random_ssr_pure(rng, modes_upto(3));
  const FockState lifted = wedge(vac0, psi);
  CHECK(max_abs_diff(lifted.amps, psi.amps) == 0.0);  // vacuum is the identity

  const FockState one_on_1 = FockState::basis_state({1}, 1);
  const FockState one_on_2 = FockState::basis_state({2}, 1);
  const FockState fwd = wedge(one_on_1, one_on_2);
  CHECK(fwd.amps[3] == Complex{1.0});  // |1> ^ |2> = +|1^2>
  const FockState rev = wedge(one_on_2, one_on_1);
  CHECK(rev.amps[3] == Complex{-1.0});  // |2> ^ |1> = -|1^2>

  CHECK_THROWS_AS(wedge(one_on_1, one_on_1), std::invalid_argument);
}

TEST_CASE("wedge graded symmetry") {
  // |u> ^ |v> = (-1)^(n_u n_v) |v> ^ |u> for definite particle numbers.
  Rng rng(11);
  const ModeList a_modes = {1, 4};
  const ModeList b_modes = {2, 3, 5};
  for (int n_u = 0; n_u <= 2; ++n_u)
    for (int n_v = 0; n_v <= 3; ++n_v) {
      Vector ua = Vector::Zero(4), vb = Vector::Zero(8);
      std::normal_distribution<double> gauss;
      for (std::uint32_t p = 0; p < 4; ++p)
        if (std::popcount(p) == n_u) ua[p] = Complex(gauss(rng), gauss(rng));
      for (std::uint32_t p = 0; p < 8; ++p)
        if (std::popcount(p) == n_v) vb[p] = Complex(gauss(rng), gauss(rng));
      const FockState u(a_modes, ua), v(b_modes, vb);
      const FockState uv = wedge(u, v), vu = wedge(v, u);
      const double expected_sign = (n_u * n_v) % 2 == 0 ? 1.0 : -1.0;
      CHECK(max_abs_diff(uv.amps, Vector(expected_sign * vu.amps)) < 1e-12);
    }
}

TEST_CASE("operator wedge: identity factorization") {
  const FockOperator ia = FockOperator::identity({1, 3});
  const FockOperator ib = FockOperator::identity({2, 5});
  const FockOperator both = wedge(ia, ib);
  CHECK(max_abs_diff(both.entries, Matrix(Matrix::Identity(16, 16))) == 0.0);
  CHECK(both.modes == ModeList{1, 2, 3, 5});
}

TEST_CASE("operator wedge: diagonal projector example") {
  const FockState one = FockState::basis_state({1}, 1);
  const FockState vac2 = FockState::vacuum({2});
  const FockOperator prod = wedge(outer(one, one), outer(vac2, vac2));
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 1.0;  // pattern "10"
  CHECK(max_abs_diff(prod.entries, expected) == 0.0);
}

TEST_CASE("wedge is associative on states and operators") {
  Rng rng(26);
  for (int t = 0; t < 10; ++t) {
    const FockState a = random_ssr_pure(rng, {1, 5});
    const FockState b = random_ssr_pure(rng, {3});
    const FockState c = random_ssr_pure(rng, {2, 4});
    CHECK(max_abs_diff(wedge(wedge(a, b), c).amps,
                       wedge(a, wedge(b, c)).amps) < 1e-12);

    const FockOperator x({1, 5}, random_matrix(rng, 4, 4));
    const FockOperator y({3}, random_matrix(rng, 2, 2));
    const FockOperator z({2, 4}, random_matrix(rng, 4, 4));
    CHECK(max_abs_diff(wedge(wedge(x, y), z).entries,
                       wedge(x, wedge(y, z)).entries) < 1e-12);
  }
}

TEST_CASE("trace factorizes over wedge products") {
  Rng rng(21);
  for (int t = 0; t < 25; ++t) {
    const Matrix c = random_matrix(rng, 4, 4);
    const Matrix d = random_matrix(rng, 4, 4);
    const FockOperator cd = wedge(FockOperator({1, 2}, c), FockOperator({3, 4}, d));
    const Complex lhs = cd.entries.trace();
    const Complex rhs = c.trace() * d.trace();
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("wedge composition law (C^D)(E^F) = (CE^DF)") {
  Rng rng(22);
  const ModeList a = {1, 4};
  const ModeList b = {2, 6};
  for (int t = 0; t < 50; ++t) {
    const Matrix c = random_matrix(rng, 4, 4), e = random_matrix(rng, 4, 4);
    const Matrix d = random_matrix(rng, 4, 4), f = random_matrix(rng, 4, 4);
    const Matrix lhs = (wedge(FockOperator(a, c), FockOperator(b, d)).entries *
                        wedge(FockOperator(a, e), FockOperator(b, f)).entries);
    const Matrix rhs =
        wedge(FockOperator(a, c * e), FockOperator(b, d * f)).entries;
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("hermitian wedge hermitian stays hermitian") {
  Rng rng(23);
  for (int t = 0; t < 25; ++t) {
    const Matrix pa = random_hermitian(rng, 4);
    const Matrix pb = random_hermitian(rng, 2);
    const Matrix w = wedge(FockOperator({2, 5}, pa), FockOperator({3}, pb)).entries;
    CHECK(max_abs_diff(w, Matrix(w.adjoint())) < 1e-12);
  }
}

TEST_CASE("operator wedge equals outer product of state wedges") {
  Rng rng(24);
  for (int t = 0; t < 10; ++t) {
    const FockState a = random_ssr_pure(rng, {1, 3});
    const FockState b = random_ssr_pure(rng, {1, 3});
    const FockState c = random_ssr_pure(rng, {2});
    const FockState d = random_ssr_pure(rng, {2});
    const Matrix lhs = wedge(outer(a, b), outer(c, d)).entries;
    const FockState ac = wedge(a, c), bd = wedge(b, d);
    CHECK(max_abs_diff(lhs, outer(ac, bd).entries) < 1e-12);
  }
}

TEST_CASE("number and parity operators") {
  const FockOperator pi = parity_operator(3);
  CHECK(pi.entries(0, 0) == Complex{1.0});   // vacuum is even
  CHECK(pi.entries(3, 3) == Complex{1.0});   // |1^2| even
  CHECK(pi.entries(1, 1) == Complex{-1.0});  // |1> odd
  for (int n = 1; n <= 6; ++n) {
    const Matrix p = parity_operator(n).entries;
    CHECK(max_abs_diff(p * p, Matrix(Matrix::Identity(p.rows(), p.cols()))) ==
          0.0);
  }
  const FockOperator num = number_operator(2);
  CHECK(num.entries(3, 3) == Complex{2.0});
}

namespace {

// Independent oracle for `embed`: write the local operator as a polynomial
// in its modes' ladder operators and evaluate with the global matrices,
// via |p><q|_M = (f^+ string of p) (prod_{i in M} f_i f_i^+) (f string of q).
Matrix ladder_string_embed(const FockOperator& local, const ModeList& global) {
  const auto d = std::int64_t{1} << global.size();
  Matrix pvac = Matrix::Identity(d, d);
  for (Mode m : local.modes) {
    const Matrix c = creation_matrix(global, m).entries;
    pvac = pvac * (c.adjoint() * c).eval();
  }
  std::vector<Matrix> k(local.dim());
  for (std::uint32_t p = 0; p < local.dim(); ++p) {
    Matrix s = Matrix::Identity(d, d);
    for (int i = static_cast<int>(local.modes.size()) - 1; i >= 0; --i)
      if (p >> i & 1u)
        s = creation_matrix(global, local.modes[static_cast<std::size_t>(i)])
                .entries *
            s;
    k[p] = s * pvac;
  }
  Matrix out = Matrix::Zero(d, d);
  for (std::uint32_t p = 0; p < local.dim(); ++p)
    for (std::uint32_t q = 0; q < local.dim(); ++q) {
      const Complex v = local.entries(p, q);
      if (v == Complex{}) continue;
      out += v * (k[p] * k[q].adjoint());
    }
  return out;
}

}  // namespace

TEST_CASE("embedding equals the ladder-string evaluation") {
  Rng rng(25);
  const ModeList global = modes_upto(4);
  for (const ModeList& local : {ModeList{2, 3}, ModeList{1, 4}, ModeList{3}}) {
    for (int t = 0; t < 5; ++t) {
      const auto dim = std::int64_t{1} << local.size();
      const FockOperator x(local, random_matrix(rng, dim, dim));
      CHECK(max_abs_diff(embed(x, global).entries,
                         ladder_string_embed(x, global)) < 1e-12);
    }
  }
  // In particular it reproduces the global ladder matrices themselves.
  const FockOperator local_create = creation_matrix({3}, 3);
  CHECK(max_abs_diff(embed(local_create, global).entries,
                     creation_matrix(global, 3).entries) < 1e-12);
}
