#include "fermiqit/sampling.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "fermiqit/channels.hpp"

namespace fermiqit {

Matrix random_matrix(Rng& rng, std::int64_t rows, std::int64_t cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (std::int64_t r = 0; r < rows; ++r)
    for (std::int64_t c = 0; c < cols; ++c)
      m(r, c) = Complex(gauss(rng), gauss(rng));
  return m;
}

Matrix random_hermitian(Rng& rng, std::int64_t dim) {
  Matrix g = random_matrix(rng, dim, dim);
  return (g + g.adjoint()) / 2.0;
}

Matrix random_unitary_matrix(Rng& rng, std::int64_t dim) {
  Matrix g = random_matrix(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::int64_t i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    q.col(i) *= (d == Complex{}) ? 1.0 : d / std::abs(d);
  }
  return q;
}

FockOperator random_ssr_observable(Rng& rng, const ModeList& modes) {
  const auto& map = ParityBasisMap::get(static_cast<int>(modes.size()));
  const auto e = static_cast<std::int64_t>(map.even_dim());
  const auto o = static_cast<std::int64_t>(map.dim()) - e;
  return assemble_block_diagonal(modes, random_hermitian(rng, e),
                                 random_hermitian(rng, o));
}

FockState random_ssr_pure(Rng& rng, const ModeList& modes) {
  return random_ssr_pure(rng, modes, std::uniform_int_distribution<int>(0, 1)(rng) == 0);
}

FockState random_ssr_pure(Rng& rng, const ModeList& modes, bool even) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::size_t d = std::size_t{1} << modes.size();
  Vector amps = Vector::Zero(static_cast<std::int64_t>(d));
  for (std::uint32_t p = 0; p < d; ++p) {
    const bool p_even = std::popcount(p) % 2 == 0;
    if (p_even == even) amps[p] = Complex(gauss(rng), gauss(rng));
  }
  return FockState(modes, std::move(amps)).normalized();
}

FockOperator random_ssr_state(Rng& rng, const ModeList& modes) {
  const auto& map = ParityBasisMap::get(static_cast<int>(modes.size()));
  const auto e = static_cast<std::int64_t>(map.even_dim());
  const auto o = static_cast<std::int64_t>(map.dim()) - e;
  auto wishart = [&](std::int64_t dim) -> Matrix {
    if (dim == 0) return Matrix::Zero(0, 0);
    Matrix g = random_matrix(rng, dim, dim);
    return g * g.adjoint();
  };
  Matrix ee = wishart(e);
  Matrix oo = wishart(o);
  const double total = (ee.trace() + oo.trace()).real();
  if (ee.size()) ee /= total;
  if (oo.size()) oo /= total;
  return assemble_block_diagonal(modes, ee, oo);
}

FockOperator random_ssr_unitary(Rng& rng, const ModeList& modes) {
  const auto& map = ParityBasisMap::get(static_cast<int>(modes.size()));
  const auto e = static_cast<std::int64_t>(map.even_dim());
  const auto o = static_cast<std::int64_t>(map.dim()) - e;
  return assemble_block_diagonal(modes, random_unitary_matrix(rng, e),
                                 random_unitary_matrix(rng, o));
}

FockOperator random_antidiagonal_unitary(Rng& rng, const ModeList& modes) {
  const auto& map = ParityBasisMap::get(static_cast<int>(modes.size()));
  const auto e = static_cast<std::int64_t>(map.even_dim());
  const auto o = static_cast<std::int64_t>(map.dim()) - e;
  if (e != o)
    throw std::invalid_argument(
        "anti-diagonal unitaries need equal parity sector dimensions");
  return assemble_block_antidiagonal(modes, random_unitary_matrix(rng, e),
                                     random_unitary_matrix(rng, o));
}

KrausChannel random_ssr_channel(Rng& rng, int n_modes, int n_kraus) {
  if (n_kraus < 1) throw std::invalid_argument("need at least one Kraus term");
  ModeList modes(static_cast<std::size_t>(n_modes));
  for (int i = 0; i < n_modes; ++i) modes[static_cast<std::size_t>(i)] = i + 1;
  const auto& map = ParityBasisMap::get(n_modes);
  const auto e = static_cast<std::int64_t>(map.even_dim());
  const auto o = static_cast<std::int64_t>(map.dim()) - e;

  std::vector<Matrix> raw;
  raw.reserve(static_cast<std::size_t>(n_kraus));
  std::uniform_int_distribution<int> coin(0, 1);
  for (int k = 0; k < n_kraus; ++k) {
    const bool diagonal = (o == 0) || coin(rng) == 0;
    FockOperator g =
        diagonal
            ? assemble_block_diagonal(modes, random_matrix(rng, e, e),
                                      random_matrix(rng, o, o))
            : assemble_block_antidiagonal(modes, random_matrix(rng, e, o),
                                          random_matrix(rng, o, e));
    raw.push_back(g.entries);
  }

  // Normalize: E_k = G_k S^(-1/2) with S = sum G^+ G keeps each block form
  // (S is block diagonal) and gives sum E^+ E = I.
  const auto d = static_cast<std::int64_t>(map.dim());
  Matrix s = Matrix::Zero(d, d);
  for (const Matrix& g : raw) s += g.adjoint() * g;
  Eigen::SelfAdjointEigenSolver<Matrix> solver((s + s.adjoint()) / 2.0);
  Matrix inv_sqrt = solver.eigenvectors() *
                    solver.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                    solver.eigenvectors().adjoint();
  std::vector<Matrix> kraus;
  kraus.reserve(raw.size());
  for (const Matrix& g : raw) kraus.push_back(g * inv_sqrt);
  return KrausChannel(n_modes, std::move(kraus));
}

}  // namespace fermiqit
