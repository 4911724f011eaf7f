#include "fermiqit/channels.hpp"

#include <algorithm>
#include <bit>

#include <Eigen/Eigenvalues>

#include "fermiqit/ptrace.hpp"
#include "fermiqit/sampling.hpp"

namespace fermiqit {

namespace {

ModeList iota_modes(int first, int count) {
  ModeList modes(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    modes[static_cast<std::size_t>(i)] = first + i;
  return modes;
}

}  // namespace

KrausChannel::KrausChannel(int n_modes, std::vector<Matrix> kraus, double tol)
    : n_modes_(n_modes), modes_(iota_modes(1, n_modes)),
      kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("channel has no Kraus operators");
  const auto d = static_cast<std::int64_t>(dim());
  kinds_.reserve(kraus_.size());
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    if (kraus_[k].rows() != d || kraus_[k].cols() != d)
      throw std::invalid_argument("Kraus operator has wrong dimension");
    const BlockKind kind =
        classify_operator(FockOperator(modes_, kraus_[k]), tol).kind;
    if (kind == BlockKind::Neither)
      throw SsrError("Kraus operator " + std::to_string(k) +
                     " has no definite parity block form");
    kinds_.push_back(kind);
  }
  Matrix s = Matrix::Zero(d, d);
  for (const Matrix& e : kraus_) s += e.adjoint() * e;
  Eigen::SelfAdjointEigenSolver<Matrix> solver((s + s.adjoint()) / 2.0);
  if (solver.eigenvalues().maxCoeff() > 1.0 + 100 * tol)
    throw SsrError("sum E^+ E exceeds the identity; not a quantum operation");
}

KrausChannel KrausChannel::identity_channel(int n_modes) {
  const auto d = std::int64_t{1} << n_modes;
  return KrausChannel(n_modes, {Matrix::Identity(d, d)});
}

KrausChannel KrausChannel::parity_dephasing(int n_modes) {
  const auto& map = ParityBasisMap::get(n_modes);
  const auto d = static_cast<std::int64_t>(map.dim());
  Matrix even = Matrix::Zero(d, d);
  Matrix odd = Matrix::Zero(d, d);
  for (std::size_t p = 0; p < map.dim(); ++p) {
    const auto i = static_cast<std::int64_t>(p);
    if (std::popcount(p) % 2 == 0)
      even(i, i) = 1.0;
    else
      odd(i, i) = 1.0;
  }
  return KrausChannel(n_modes, {std::move(even), std::move(odd)});
}

double KrausChannel::completeness_defect() const {
  const auto d = static_cast<std::int64_t>(dim());
  Matrix s = Matrix::Zero(d, d);
  for (const Matrix& e : kraus_) s += e.adjoint() * e;
  return (s - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

bool KrausChannel::trace_preserving(double tol) const {
  return completeness_defect() <= tol;
}

FockOperator apply_kraus(const KrausChannel& ch, const FockOperator& rho) {
  if (rho.dim() != ch.dim())
    throw std::invalid_argument("state dimension does not match the channel");
  Matrix out = Matrix::Zero(rho.entries.rows(), rho.entries.cols());
  for (const Matrix& e : ch.kraus()) out += e * rho.entries * e.adjoint();
  return FockOperator(rho.modes, std::move(out), rho.basis);
}

namespace {

// |alpha> = c sum_i |i_H> ^ |i_L> on modes 1..2N. All system labels sit
// below all environment labels, so every pair wedges with sign +1.
FockState maximally_entangled(int n_modes, double prefactor) {
  const std::size_t d = std::size_t{1} << n_modes;
  Vector amps = Vector::Zero(static_cast<std::int64_t>(d * d));
  for (std::uint32_t i = 0; i < d; ++i)
    amps[i | (i << n_modes)] = prefactor;
  return FockState(iota_modes(1, 2 * n_modes), std::move(amps));
}

double recovery_factor(const ChoiState& choi) {
  // 1/c^2 for the stored |alpha> prefactor c.
  switch (choi.convention) {
    case ChoiConvention::UnitAlpha:
      return std::pow(2.0, choi.n_modes);
    case ChoiConvention::UnnormalizedAlpha:
      return std::pow(2.0, 2 * choi.n_modes);
  }
  throw std::logic_error("unknown Choi convention");
}

}  // namespace

ChoiState choi_of_channel(const KrausChannel& ch) {
  const int n = ch.mode_count();
  const FockState alpha =
      maximally_entangled(n, std::pow(2.0, -0.5 * n));
  const FockOperator alpha_proj = outer(alpha, alpha);
  const FockOperator env_id = FockOperator::identity(iota_modes(n + 1, n));
  Matrix sigma = Matrix::Zero(alpha_proj.entries.rows(),
                              alpha_proj.entries.cols());
  for (const Matrix& e : ch.kraus()) {
    const Matrix embedded =
        wedge(FockOperator(ch.modes(), e), env_id).entries;
    sigma += embedded * alpha_proj.entries * embedded.adjoint();
  }
  return ChoiState{n, FockOperator(alpha_proj.modes, std::move(sigma)),
                   ChoiConvention::UnitAlpha};
}

ChoiState choi_of_map(int n_modes,
                      const std::function<Matrix(const Matrix&)>& phi) {
  const double c2 = std::pow(2.0, -n_modes);  // c^2 for the unit-norm |alpha>
  const ModeList sys = iota_modes(1, n_modes);
  const ModeList env = iota_modes(n_modes + 1, n_modes);
  const auto d = std::int64_t{1} << n_modes;
  const auto global_dim = d * d;
  Matrix sigma = Matrix::Zero(global_dim, global_dim);
  Matrix unit = Matrix::Zero(d, d);
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) {
      unit(i, j) = 1.0;
      const Matrix image = phi(unit);
      unit(i, j) = 0.0;
      Matrix twin = Matrix::Zero(d, d);
      twin(i, j) = 1.0;
      sigma += wedge(FockOperator(sys, image), FockOperator(env, twin))
                   .entries * c2;
    }
  return ChoiState{n_modes,
                   FockOperator(iota_modes(1, 2 * n_modes), std::move(sigma)),
                   ChoiConvention::UnitAlpha};
}

Matrix choi_apply_pure(const ChoiState& choi, const FockState& eta) {
  const int n = choi.n_modes;
  if (eta.mode_count() != n)
    throw std::invalid_argument("state does not match the Choi system size");
  if (!has_definite_parity(eta))
    throw SsrError("Choi recovery needs a definite-parity pure state");
  const FockState twin(iota_modes(n + 1, n), eta.amps.conjugate());
  const Matrix w = wedge_columns(iota_modes(1, n), twin);
  return recovery_factor(choi) * (w.adjoint() * choi.sigma.entries * w);
}

KrausChannel kraus_from_choi(const ChoiState& choi, double tol) {
  const int n = choi.n_modes;
  const FockOperator& sigma = choi.sigma;
  if ((sigma.entries - sigma.entries.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw SsrError("Choi state is not Hermitian");
  const BlockForm form = classify_operator(sigma, tol);
  if (form.kind != BlockKind::BlockDiagonal)
    throw SsrError("Choi state is not SSR block diagonal");

  const auto& map = ParityBasisMap::get(2 * n);
  const WedgePlan plan(iota_modes(1, n), iota_modes(n + 1, n));
  const double factor = std::sqrt(recovery_factor(choi));
  const auto d = std::int64_t{1} << n;

  std::vector<Matrix> kraus;
  double min_eig = 0.0;
  auto harvest = [&](const Matrix& block, std::size_t offset) {
    if (block.size() == 0) return;
    Eigen::SelfAdjointEigenSolver<Matrix> solver((block + block.adjoint()) /
                                                 2.0);
    min_eig = std::min(min_eig, solver.eigenvalues().minCoeff());
    for (std::int64_t k = 0; k < solver.eigenvalues().size(); ++k) {
      const double a = solver.eigenvalues()[k];
      if (a <= tol) continue;
      // Eigenvector of the parity sector, mapped back to canonical indexing.
      Vector s = Vector::Zero(static_cast<std::int64_t>(map.dim()));
      for (std::int64_t r = 0; r < block.rows(); ++r)
        s[static_cast<std::int64_t>(
            map.order[offset + static_cast<std::size_t>(r)])] =
            solver.eigenvectors()(r, k);
      // Deterministic phase: largest-magnitude entry real positive.
      std::int64_t arg_max = 0;
      for (std::int64_t r = 1; r < s.size(); ++r)
        if (std::abs(s[r]) > std::abs(s[arg_max])) arg_max = r;
      if (std::abs(s[arg_max]) > 0)
        s *= std::abs(s[arg_max]) / s[arg_max];

      Matrix e = Matrix::Zero(d, d);
      for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(d); ++p)
        for (std::uint32_t q = 0; q < static_cast<std::uint32_t>(d); ++q)
          e(p, q) = factor * std::sqrt(a) *
                    static_cast<double>(plan.sign(p, q)) *
                    s[plan.merge_pattern(p, q)];
      kraus.push_back(std::move(e));
    }
  };
  harvest(form.ee, 0);
  harvest(form.oo, map.even_dim());
  if (min_eig < -tol)
    throw SsrError("Choi state is not positive semi-definite; min eigenvalue " +
                   std::to_string(min_eig));
  return KrausChannel(n, std::move(kraus));
}

StinespringDilation stinespring_from_kraus(const KrausChannel& ch,
                                           double tol) {
  if (!ch.trace_preserving(100 * tol))
    throw std::invalid_argument(
        "Stinespring dilation needs a trace-preserving channel");
  const int n = ch.mode_count();
  const int n_kraus = static_cast<int>(ch.kraus().size());
  const int env = std::max(n_kraus, n);
  const ModeList sys_modes = iota_modes(1, n);
  const ModeList env_modes = iota_modes(n + 1, env);
  const std::size_t env_dim = std::size_t{1} << env;

  // One distinct environment basis state per Kraus operator, with parity
  // matching the operator's block form.
  std::vector<std::uint32_t> flags(ch.kraus().size());
  {
    std::uint32_t next_even = 0, next_odd = 0;
    auto take = [&](bool even) -> std::uint32_t {
      std::uint32_t& cursor = even ? next_even : next_odd;
      while (cursor < env_dim &&
             (std::popcount(cursor) % 2 == 0) != even)
        ++cursor;
      if (cursor >= env_dim)
        throw std::invalid_argument(
            "not enough environment basis states of one parity; need more "
            "than " + std::to_string(env) + " environment modes");
      return cursor++;
    };
    for (std::size_t k = 0; k < ch.kraus().size(); ++k)
      flags[k] = take(ch.kinds()[k] == BlockKind::BlockDiagonal);
  }

  // Isometry V: |psi> ^ |vac>_E -> sum_k (E_k |psi>) ^ |omega_k>.
  const auto sys_dim = std::int64_t{1} << n;
  const auto global_dim = static_cast<std::int64_t>(env_dim) * sys_dim;
  Matrix v = Matrix::Zero(global_dim, sys_dim);
  for (std::size_t k = 0; k < ch.kraus().size(); ++k) {
    const FockState omega_k = FockState::basis_state(env_modes, flags[k]);
    v += wedge_columns(sys_modes, omega_k) * ch.kraus()[k];
  }
  if ((v.adjoint() * v - Matrix::Identity(sys_dim, sys_dim))
          .cwiseAbs()
          .maxCoeff() > 1e-8)
    throw std::invalid_argument("Kraus completeness failed; V is not an isometry");

  // Extend V to a block-diagonal unitary. Domain index (q, w) = q | (w << n)
  // has parity parity(q) + parity(w); the w = 0 columns are V's.
  Matrix u = Matrix::Zero(global_dim, global_dim);
  for (int sector = 0; sector < 2; ++sector) {
    const bool even_sector = sector == 0;
    std::vector<Vector> chosen;
    for (std::int64_t q = 0; q < sys_dim; ++q) {
      if ((std::popcount(static_cast<std::uint32_t>(q)) % 2 == 0) !=
          even_sector)
        continue;
      u.col(q) = v.col(q);
      chosen.push_back(v.col(q));
    }
    // Deterministic Gram-Schmidt completion over the sector's basis vectors.
    std::vector<Vector> completion;
    const std::size_t sector_dim = static_cast<std::size_t>(global_dim) / 2;
    for (std::int64_t g = 0;
         g < global_dim && chosen.size() < sector_dim; ++g) {
      if ((std::popcount(static_cast<std::uint32_t>(g)) % 2 == 0) !=
          even_sector)
        continue;
      Vector cand = Vector::Zero(global_dim);
      cand[g] = 1.0;
      for (const Vector& prev : chosen) cand -= prev.dot(cand) * prev;
      if (cand.norm() < 1e-8) continue;
      // Second pass keeps orthogonality tight for near-spanned candidates.
      for (const Vector& prev : chosen) cand -= prev.dot(cand) * prev;
      cand /= cand.norm();
      chosen.push_back(cand);
      completion.push_back(std::move(cand));
    }
    std::size_t next = 0;
    for (std::int64_t g = sys_dim; g < global_dim; ++g) {
      if ((std::popcount(static_cast<std::uint32_t>(g)) % 2 == 0) !=
          even_sector)
        continue;
      u.col(g) = completion.at(next++);
    }
  }

  StinespringDilation out;
  out.n_modes = n;
  out.env_modes = env;
  out.env_state = FockState::vacuum(env_modes);
  out.unitary = FockOperator(iota_modes(1, n + env), std::move(u));
  return out;
}

KrausChannel kraus_from_stinespring(const StinespringDilation& dilation,
                                    double tol) {
  if (!is_ssr_unitary(dilation.unitary, 100 * tol))
    throw SsrError("dilation unitary is not an SSR unitary");
  if (std::abs(dilation.env_state.norm() - 1.0) > 100 * tol ||
      !has_definite_parity(dilation.env_state))
    throw SsrError("environment state is not a pure SSR state");

  const ModeList sys_modes = iota_modes(1, dilation.n_modes);
  const Matrix w_env = wedge_columns(sys_modes, dilation.env_state);
  const Matrix u_wpsi = dilation.unitary.entries * w_env;
  const std::size_t env_dim = std::size_t{1} << dilation.env_modes;

  std::vector<Matrix> kraus;
  for (std::uint32_t f = 0; f < env_dim; ++f) {
    const FockState basis_f =
        FockState::basis_state(dilation.env_state.modes, f);
    Matrix e = wedge_columns(sys_modes, basis_f).adjoint() * u_wpsi;
    if (e.norm() < 1e-12) continue;  // prune zero operators
    kraus.push_back(std::move(e));
  }
  return KrausChannel(dilation.n_modes, std::move(kraus), 100 * tol);
}

FockOperator apply_stinespring(const StinespringDilation& dilation,
                               const FockOperator& rho) {
  const FockOperator joint = wedge(
      rho, outer(dilation.env_state, dilation.env_state));
  const Matrix evolved = dilation.unitary.entries * joint.entries *
                         dilation.unitary.entries.adjoint();
  return ptrace(FockOperator(joint.modes, evolved),
                dilation.env_state.modes);
}

namespace {

AxiomReport verify_impl(int n_modes,
                        const std::function<Matrix(const Matrix&)>& phi,
                        int trials, std::uint64_t seed, double tol) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  Rng rng(seed);
  const ModeList modes = iota_modes(1, n_modes);
  AxiomReport report;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const Matrix rho1 = random_ssr_state(rng, modes).entries;
    const Matrix rho2 = random_ssr_state(rng, modes).entries;
    report.max_trace_deviation = std::max(
        report.max_trace_deviation, std::abs(phi(rho1).trace() - Complex{1.0}));
    const double p = unit(rng);
    const Matrix mixed = phi(p * rho1 + (1.0 - p) * rho2) -
                         p * phi(rho1) - (1.0 - p) * phi(rho2);
    report.max_convexity_deviation =
        std::max(report.max_convexity_deviation, mixed.cwiseAbs().maxCoeff());
  }
  const ChoiState choi = choi_of_map(n_modes, phi);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      (choi.sigma.entries + choi.sigma.entries.adjoint()) / 2.0);
  report.min_choi_eigenvalue = solver.eigenvalues().minCoeff();
  report.trace_preserving = report.max_trace_deviation <= tol;
  report.convex_linear = report.max_convexity_deviation <= tol;
  report.completely_positive = report.min_choi_eigenvalue >= -tol;
  return report;
}

}  // namespace

AxiomReport verify_axioms(const KrausChannel& ch, int trials,
                          std::uint64_t seed, double tol) {
  auto phi = [&ch](const Matrix& rho) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    for (const Matrix& e : ch.kraus()) out += e * rho * e.adjoint();
    return out;
  };
  return verify_impl(ch.mode_count(), phi, trials, seed, tol);
}

AxiomReport verify_map_axioms(int n_modes,
                              const std::function<Matrix(const Matrix&)>& phi,
                              int trials, std::uint64_t seed, double tol) {
  return verify_impl(n_modes, phi, trials, seed, tol);
}

}  // namespace fermiqit
