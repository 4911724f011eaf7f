#include "fermiqit/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include <Eigen/Eigenvalues>

#include "fermiqit/ptrace.hpp"
#include "fermiqit/sampling.hpp"
#include "fermiqit/ssr.hpp"

namespace fermiqit {

namespace {

// Eigen-decompose an SSR density operator sector by sector so that every
// eigenvector has exact definite parity. Pairs are returned descending.
struct SectorEigen {
  std::vector<double> values;
  std::vector<Vector> vectors;  // canonical-basis, full dimension
  std::vector<bool> even;       // parity sector of each eigenvector
};

SectorEigen ssr_eigendecompose(const FockOperator& rho, double tol) {
  const BlockForm form = classify_operator(rho, tol);
  if (form.kind != BlockKind::BlockDiagonal)
    throw SsrError("operator is not SSR block diagonal");
  const auto& map = ParityBasisMap::get(rho.mode_count());

  SectorEigen out;
  auto harvest = [&](const Matrix& block, std::size_t offset, bool is_even) {
    if (block.size() == 0) return;
    Eigen::SelfAdjointEigenSolver<Matrix> solver((block + block.adjoint()) /
                                                 2.0);
    for (std::int64_t k = 0; k < solver.eigenvalues().size(); ++k) {
      Vector v = Vector::Zero(static_cast<std::int64_t>(map.dim()));
      for (std::int64_t r = 0; r < block.rows(); ++r)
        v[static_cast<std::int64_t>(
            map.order[offset + static_cast<std::size_t>(r)])] =
            solver.eigenvectors()(r, k);
      out.values.push_back(solver.eigenvalues()[k]);
      out.vectors.push_back(std::move(v));
      out.even.push_back(is_even);
    }
  };
  harvest(form.ee, 0, true);
  harvest(form.oo, map.even_dim(), false);

  std::vector<std::size_t> idx(out.values.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return out.values[a] > out.values[b];
  });
  SectorEigen sorted;
  for (std::size_t i : idx) {
    sorted.values.push_back(out.values[i]);
    sorted.vectors.push_back(std::move(out.vectors[i]));
    sorted.even.push_back(out.even[i]);
  }
  return sorted;
}

ModeList complement(const ModeList& all, const ModeList& part) {
  ModeList rest;
  for (Mode m : all)
    if (!std::binary_search(part.begin(), part.end(), m)) rest.push_back(m);
  return rest;
}

}  // namespace

SchmidtDecomposition schmidt(const FockState& psi, const ModeList& a_modes,
                             double tol) {
  if (std::abs(psi.norm() - 1.0) > 100 * tol)
    throw std::invalid_argument("Schmidt input must be normalized");
  if (!has_definite_parity(psi, tol))
    throw SsrError("Schmidt input must be a definite-parity SSR state");
  ModeList a_sorted(a_modes);
  std::sort(a_sorted.begin(), a_sorted.end());
  const ModeList b_modes = complement(psi.modes, a_sorted);
  if (a_sorted.empty() || b_modes.empty() ||
      a_sorted.size() + b_modes.size() != psi.modes.size())
    throw std::invalid_argument("partition must be a proper nonempty subset");

  const FockOperator rho = outer(psi, psi);
  const FockOperator rho_a = ptrace(rho, b_modes);
  const SectorEigen eig = ssr_eigendecompose(rho_a, 100 * tol);

  // Unweave psi = sum_{p,q} Psi[p,q] |p>_A ^ |q>_B with the wedge signs.
  const WedgePlan plan(a_sorted, b_modes);
  const auto da = std::int64_t{1} << a_sorted.size();
  const auto db = std::int64_t{1} << b_modes.size();
  Matrix unweave = Matrix::Zero(da, db);
  for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(da); ++p)
    for (std::uint32_t q = 0; q < static_cast<std::uint32_t>(db); ++q)
      unweave(p, q) = static_cast<double>(plan.sign(p, q)) *
                      psi.amps[plan.merge_pattern(p, q)];

  SchmidtDecomposition dec;
  std::vector<double> coeffs;
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    const double p_i = eig.values[i];
    if (p_i <= tol) continue;
    // |h_i>(q) = sum_p conj(i_A(p)) Psi[p,q]; <h_j|h_i> = p_i delta_ij.
    Vector h = unweave.transpose() * eig.vectors[i].conjugate();
    coeffs.push_back(p_i);
    dec.left.emplace_back(a_sorted, eig.vectors[i]);
    dec.right.emplace_back(b_modes, h / std::sqrt(p_i));
  }
  dec.coeffs = Eigen::Map<RealVector>(coeffs.data(),
                                      static_cast<std::int64_t>(coeffs.size()));
  return dec;
}

FockState reconstruct(const SchmidtDecomposition& dec) {
  if (dec.left.empty()) throw std::invalid_argument("empty decomposition");
  FockState sum = wedge(dec.left[0], dec.right[0]);
  sum.amps *= std::sqrt(dec.coeffs[0]);
  for (std::size_t i = 1; i < dec.left.size(); ++i) {
    FockState term = wedge(dec.left[i], dec.right[i]);
    sum.amps += std::sqrt(dec.coeffs[static_cast<std::int64_t>(i)]) * term.amps;
  }
  return sum;
}

FockState purify(const FockOperator& rho, double tol) {
  const SsrVerdict verdict = is_ssr_state(rho, 100 * tol);
  if (!verdict)
    throw SsrError("purification input is not an SSR state: " + verdict.failure);
  const int m = rho.mode_count();
  const Mode base = rho.modes.empty() ? 0 : rho.modes.back();
  ModeList env_modes(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) env_modes[static_cast<std::size_t>(i)] = base + i + 1;
  const std::size_t env_dim = std::size_t{1} << m;

  const SectorEigen eig = ssr_eigendecompose(rho, 100 * tol);

  // Pair each eigenvector with a fresh environment basis state of the same
  // parity so the global state comes out even.
  std::uint32_t next_even = 0, next_odd = 0;
  auto take = [&](bool even) {
    std::uint32_t& cursor = even ? next_even : next_odd;
    while ((std::popcount(cursor) % 2 == 0) != even) ++cursor;
    if (cursor >= env_dim) throw std::logic_error("environment exhausted");
    return cursor++;
  };

  std::optional<FockState> omega;
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    if (eig.values[i] <= tol) continue;
    const FockState system_part(rho.modes, eig.vectors[i]);
    const FockState env_part =
        FockState::basis_state(env_modes, take(eig.even[i]));
    FockState term = wedge(system_part, env_part);
    term.amps *= std::sqrt(eig.values[i]);
    if (!omega)
      omega = std::move(term);
    else
      omega->amps += term.amps;
  }
  if (!omega) throw SsrError("state has no spectral weight above tolerance");
  return *omega;
}

UncorrelatedVerdict is_uncorrelated(const FockOperator& rho_ab,
                                    const ModeList& a_modes,
                                    UncorrelatedDefinition definition,
                                    const UncorrelatedOptions& options) {
  ModeList a_sorted(a_modes);
  std::sort(a_sorted.begin(), a_sorted.end());
  const ModeList b_modes = complement(rho_ab.modes, a_sorted);
  if (a_sorted.empty() || b_modes.empty() ||
      a_sorted.size() + b_modes.size() != rho_ab.modes.size())
    throw std::invalid_argument("partition must be a proper nonempty subset");

  const FockOperator rho_a = ptrace(rho_ab, b_modes);
  const FockOperator rho_b = ptrace(rho_ab, a_sorted);

  if (definition == UncorrelatedDefinition::ProductForm) {
    const double witness =
        (rho_ab.entries - wedge(rho_a, rho_b).entries).norm();
    return {witness < options.tol, witness};
  }

  const bool ssr_only = definition == UncorrelatedDefinition::LocalObservables;
  double witness = 0.0;
  auto probe = [&](const Matrix& oa, const Matrix& ob) {
    const FockOperator pair =
        wedge(FockOperator(a_sorted, oa), FockOperator(b_modes, ob));
    const Complex joint = (rho_ab.entries * pair.entries).trace();
    const Complex split = (rho_a.entries * oa).trace() *
                          (rho_b.entries * ob).trace();
    witness = std::max(witness, std::abs(joint - split));
  };

  if (options.spanning) {
    // A real-linear spanning set of the relevant Hermitian operator space:
    // factorization is bilinear, so checking it on a spanning set decides it.
    auto hermitian_basis = [](std::int64_t dim) {
      std::vector<Matrix> basis;
      for (std::int64_t i = 0; i < dim; ++i)
        for (std::int64_t j = i; j < dim; ++j) {
          Matrix m = Matrix::Zero(dim, dim);
          if (i == j) {
            m(i, i) = 1.0;
            basis.push_back(m);
          } else {
            m(i, j) = m(j, i) = 1.0;
            basis.push_back(m);
            m(i, j) = Complex(0.0, 1.0);
            m(j, i) = Complex(0.0, -1.0);
            basis.push_back(std::move(m));
          }
        }
      return basis;
    };
    auto ssr_hermitian_basis = [&](const ModeList& modes) {
      const auto& map = ParityBasisMap::get(static_cast<int>(modes.size()));
      const auto e = static_cast<std::int64_t>(map.even_dim());
      const auto o = static_cast<std::int64_t>(map.dim()) - e;
      std::vector<Matrix> basis;
      for (const Matrix& ee : hermitian_basis(e))
        basis.push_back(
            assemble_block_diagonal(modes, ee, Matrix::Zero(o, o)).entries);
      for (const Matrix& oo : hermitian_basis(o))
        basis.push_back(
            assemble_block_diagonal(modes, Matrix::Zero(e, e), oo).entries);
      return basis;
    };
    const auto da = std::int64_t{1} << a_sorted.size();
    const auto db = std::int64_t{1} << b_modes.size();
    const std::vector<Matrix> basis_a =
        ssr_only ? ssr_hermitian_basis(a_sorted) : hermitian_basis(da);
    const std::vector<Matrix> basis_b =
        ssr_only ? ssr_hermitian_basis(b_modes) : hermitian_basis(db);
    for (const Matrix& oa : basis_a)
      for (const Matrix& ob : basis_b) probe(oa, ob);
  }

  Rng rng(options.seed);
  for (int t = 0; t < options.trials; ++t) {
    const Matrix oa = ssr_only
                          ? random_ssr_observable(rng, a_sorted).entries
                          : random_hermitian(rng, std::int64_t{1}
                                                      << a_sorted.size());
    const Matrix ob = ssr_only
                          ? random_ssr_observable(rng, b_modes).entries
                          : random_hermitian(rng, std::int64_t{1}
                                                      << b_modes.size());
    probe(oa, ob);
  }
  return {witness < options.tol, witness};
}

double entropy_of_spectrum(const RealVector& spectrum, double tol) {
  double s = 0.0;
  for (std::int64_t i = 0; i < spectrum.size(); ++i) {
    const double p = spectrum[i];
    if (p < -tol)
      throw std::invalid_argument("spectrum has a negative eigenvalue " +
                                  std::to_string(p));
    if (p > tol) s -= p * std::log2(p);
  }
  return s;
}

double von_neumann_entropy(const FockOperator& rho, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      (rho.entries + rho.entries.adjoint()) / 2.0);
  return entropy_of_spectrum(solver.eigenvalues(), tol);
}

}  // namespace fermiqit
