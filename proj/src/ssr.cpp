#include "fermiqit/ssr.hpp"

#include <bit>
#include <map>
#include <mutex>

#include <Eigen/Eigenvalues>

namespace fermiqit {

std::size_t ParityBasisMap::even_dim() const {
  return n_modes == 0 ? 1 : dim() / 2;
}

const ParityBasisMap& ParityBasisMap::get(int n_modes) {
  static std::mutex mu;
  static std::map<int, ParityBasisMap> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n_modes);
  if (it != cache.end()) return it->second;

  ParityBasisMap map;
  map.n_modes = n_modes;
  const std::size_t d = std::size_t{1} << n_modes;
  map.order.reserve(d);
  for (std::size_t p = 0; p < d; ++p)
    if (std::popcount(p) % 2 == 0) map.order.push_back(p);
  for (std::size_t p = 0; p < d; ++p)
    if (std::popcount(p) % 2 == 1) map.order.push_back(p);
  map.position.resize(d);
  for (std::size_t k = 0; k < d; ++k) map.position[map.order[k]] = k;
  return cache.emplace(n_modes, std::move(map)).first->second;
}

FockOperator to_parity_basis(const FockOperator& op) {
  if (op.basis != BasisTag::Canonical)
    throw std::invalid_argument("operator is already parity sorted");
  const auto& map = ParityBasisMap::get(op.mode_count());
  const auto d = static_cast<std::int64_t>(map.dim());
  Matrix out(d, d);
  for (std::int64_t r = 0; r < d; ++r)
    for (std::int64_t c = 0; c < d; ++c)
      out(r, c) = op.entries(static_cast<std::int64_t>(map.order[r]),
                             static_cast<std::int64_t>(map.order[c]));
  return FockOperator(op.modes, std::move(out), BasisTag::ParitySorted);
}

FockOperator from_parity_basis(const FockOperator& op) {
  if (op.basis != BasisTag::ParitySorted)
    throw std::invalid_argument("operator is not parity sorted");
  const auto& map = ParityBasisMap::get(op.mode_count());
  const auto d = static_cast<std::int64_t>(map.dim());
  Matrix out(d, d);
  for (std::int64_t r = 0; r < d; ++r)
    for (std::int64_t c = 0; c < d; ++c)
      out(static_cast<std::int64_t>(map.order[r]),
          static_cast<std::int64_t>(map.order[c])) = op.entries(r, c);
  return FockOperator(op.modes, std::move(out), BasisTag::Canonical);
}

FockState to_parity_basis(const FockState& st) {
  if (st.basis != BasisTag::Canonical)
    throw std::invalid_argument("state is already parity sorted");
  const auto& map = ParityBasisMap::get(st.mode_count());
  Vector out(st.amps.size());
  for (std::size_t k = 0; k < map.dim(); ++k)
    out[static_cast<std::int64_t>(k)] =
        st.amps[static_cast<std::int64_t>(map.order[k])];
  return FockState(st.modes, std::move(out), BasisTag::ParitySorted);
}

FockState from_parity_basis(const FockState& st) {
  if (st.basis != BasisTag::ParitySorted)
    throw std::invalid_argument("state is not parity sorted");
  const auto& map = ParityBasisMap::get(st.mode_count());
  Vector out(st.amps.size());
  for (std::size_t k = 0; k < map.dim(); ++k)
    out[static_cast<std::int64_t>(map.order[k])] =
        st.amps[static_cast<std::int64_t>(k)];
  return FockState(st.modes, std::move(out), BasisTag::Canonical);
}

namespace {

double block_max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

BlockForm classify_operator(const FockOperator& op, double tol) {
  const FockOperator sorted =
      op.basis == BasisTag::ParitySorted ? op : to_parity_basis(op);
  const auto& map = ParityBasisMap::get(op.mode_count());
  const auto e = static_cast<std::int64_t>(map.even_dim());
  const auto o = static_cast<std::int64_t>(map.dim()) - e;

  BlockForm form;
  form.ee = sorted.entries.topLeftCorner(e, e);
  form.eo = sorted.entries.topRightCorner(e, o);
  form.oe = sorted.entries.bottomLeftCorner(o, e);
  form.oo = sorted.entries.bottomRightCorner(o, o);

  const double on = std::max(block_max_abs(form.ee), block_max_abs(form.oo));
  const double off = std::max(block_max_abs(form.eo), block_max_abs(form.oe));
  if (off <= tol)
    form.kind = BlockKind::BlockDiagonal;
  else if (on <= tol)
    form.kind = BlockKind::BlockAntiDiagonal;
  else
    form.kind = BlockKind::Neither;
  return form;
}

FockOperator assemble_block_diagonal(const ModeList& modes, const Matrix& ee,
                                     const Matrix& oo) {
  const auto& map = ParityBasisMap::get(static_cast<int>(modes.size()));
  const auto e = static_cast<std::int64_t>(map.even_dim());
  const auto d = static_cast<std::int64_t>(map.dim());
  if (ee.rows() != e || ee.cols() != e || oo.rows() != d - e ||
      oo.cols() != d - e)
    throw std::invalid_argument("parity block has wrong dimension");
  Matrix sorted = Matrix::Zero(d, d);
  sorted.topLeftCorner(e, e) = ee;
  sorted.bottomRightCorner(d - e, d - e) = oo;
  return from_parity_basis(FockOperator(modes, std::move(sorted),
                                        BasisTag::ParitySorted));
}

FockOperator assemble_block_antidiagonal(const ModeList& modes,
                                         const Matrix& eo, const Matrix& oe) {
  const auto& map = ParityBasisMap::get(static_cast<int>(modes.size()));
  const auto e = static_cast<std::int64_t>(map.even_dim());
  const auto d = static_cast<std::int64_t>(map.dim());
  if (eo.rows() != e || eo.cols() != d - e || oe.rows() != d - e ||
      oe.cols() != e)
    throw std::invalid_argument("parity block has wrong dimension");
  Matrix sorted = Matrix::Zero(d, d);
  sorted.topRightCorner(e, d - e) = eo;
  sorted.bottomLeftCorner(d - e, e) = oe;
  return from_parity_basis(FockOperator(modes, std::move(sorted),
                                        BasisTag::ParitySorted));
}

SsrVerdict is_ssr_state(const FockOperator& rho, double tol) {
  const Matrix& m = rho.entries;
  const double herm_dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > tol)
    return {false, "not Hermitian", herm_dev};

  Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint()) / 2.0);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol)
    return {false, "not positive semi-definite", min_eig};

  const double trace_dev = std::abs(m.trace() - Complex{1.0});
  if (trace_dev > tol)
    return {false, "trace differs from one", trace_dev};

  if (classify_operator(rho, tol).kind != BlockKind::BlockDiagonal)
    return {false, "parity SSR violated", 0.0};

  return {true, "", 0.0};
}

bool is_ssr_observable(const FockOperator& a, double tol) {
  if ((a.entries - a.entries.adjoint()).cwiseAbs().maxCoeff() > tol)
    return false;
  return classify_operator(a, tol).kind == BlockKind::BlockDiagonal;
}

bool is_ssr_projector(const FockOperator& p, double tol) {
  const Matrix& m = p.entries;
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if ((m * m - m).cwiseAbs().maxCoeff() > tol) return false;
  return classify_operator(p, tol).kind == BlockKind::BlockDiagonal;
}

bool is_ssr_unitary(const FockOperator& u, double tol) {
  const Matrix& m = u.entries;
  const Matrix id = Matrix::Identity(m.rows(), m.cols());
  if ((m * m.adjoint() - id).cwiseAbs().maxCoeff() > tol) return false;
  if ((m.adjoint() * m - id).cwiseAbs().maxCoeff() > tol) return false;
  return classify_operator(u, tol).kind == BlockKind::BlockDiagonal;
}

namespace {

std::pair<double, double> sector_weights(const FockState& st) {
  const FockState canonical =
      st.basis == BasisTag::Canonical ? st : from_parity_basis(st);
  double even_weight = 0.0, odd_weight = 0.0;
  for (std::uint32_t p = 0; p < canonical.dim(); ++p) {
    const double w = std::norm(canonical.amps[p]);
    (std::popcount(p) % 2 == 0 ? even_weight : odd_weight) += w;
  }
  return {even_weight, odd_weight};
}

}  // namespace

bool has_definite_parity(const FockState& st, double tol) {
  const auto [even_weight, odd_weight] = sector_weights(st);
  return std::min(even_weight, odd_weight) <= tol;
}

int definite_parity(const FockState& st, double tol) {
  const auto [even_weight, odd_weight] = sector_weights(st);
  if (std::min(even_weight, odd_weight) > tol)
    throw SsrError("state has support in both parity sectors");
  return even_weight >= odd_weight ? 0 : 1;
}

}  // namespace fermiqit
