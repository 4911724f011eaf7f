#include "fermiqit/fock.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace fermiqit {

int max_modes() {
  static const int cached = [] {
    if (const char* env = std::getenv("FERMIQIT_MAX_MODES")) {
      int v = std::atoi(env);
      if (v > 0 && v <= 20) return v;
    }
    return 10;
  }();
  return cached;
}

namespace {

void check_mode_list(const ModeList& modes) {
  if (static_cast<int>(modes.size()) > max_modes())
    throw std::invalid_argument("mode count " + std::to_string(modes.size()) +
                                " exceeds cap " + std::to_string(max_modes()));
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] <= 0) throw std::invalid_argument("mode labels must be positive");
    if (i > 0 && modes[i] <= modes[i - 1])
      throw std::invalid_argument("mode labels must be strictly ascending");
  }
}

int mode_position(const ModeList& modes, Mode j) {
  auto it = std::lower_bound(modes.begin(), modes.end(), j);
  if (it == modes.end() || *it != j)
    throw std::invalid_argument("unknown mode label " + std::to_string(j));
  return static_cast<int>(it - modes.begin());
}

int popcount(std::uint32_t x) { return std::popcount(x); }

}  // namespace

int OccPattern::particle_number() const { return popcount(bits); }

std::string OccPattern::to_string() const {
  std::string s(static_cast<std::size_t>(n_modes), '0');
  for (int i = 0; i < n_modes; ++i)
    if (bits >> i & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

OccPattern OccPattern::from_string(const std::string& s) {
  OccPattern p;
  p.n_modes = static_cast<int>(s.size());
  for (int i = 0; i < p.n_modes; ++i) {
    char c = s[static_cast<std::size_t>(i)];
    if (c == '1')
      p.bits |= std::uint32_t{1} << i;
    else if (c != '0')
      throw std::invalid_argument("occupation bitstring must be 0/1: " + s);
  }
  return p;
}

std::size_t pattern_index(const OccPattern& p) { return p.bits; }

OccPattern index_pattern(std::size_t index, int n_modes) {
  if (n_modes < 0 || index >= (std::size_t{1} << n_modes))
    throw std::out_of_range("basis index out of range");
  return OccPattern{n_modes, static_cast<std::uint32_t>(index)};
}

FockState::FockState(ModeList m, Vector a, BasisTag b)
    : modes(std::move(m)), amps(std::move(a)), basis(b) {
  check_mode_list(modes);
  if (static_cast<std::size_t>(amps.size()) != (std::size_t{1} << modes.size()))
    throw std::invalid_argument("amplitude vector has wrong length");
}

FockState FockState::normalized() const {
  double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  return FockState(modes, amps / n, basis);
}

FockState FockState::vacuum(ModeList modes) {
  return basis_state(std::move(modes), 0);
}

FockState FockState::basis_state(ModeList modes, std::uint32_t pattern) {
  Vector amps = Vector::Zero(std::int64_t{1} << modes.size());
  if (pattern >= static_cast<std::uint32_t>(amps.size()))
    throw std::out_of_range("basis pattern out of range");
  amps[pattern] = 1.0;
  return FockState(std::move(modes), std::move(amps));
}

FockOperator::FockOperator(ModeList m, Matrix e, BasisTag b)
    : modes(std::move(m)), entries(std::move(e)), basis(b) {
  check_mode_list(modes);
  auto d = std::int64_t{1} << modes.size();
  if (entries.rows() != d || entries.cols() != d)
    throw std::invalid_argument("operator matrix has wrong dimension");
}

FockOperator FockOperator::identity(ModeList modes) {
  auto d = std::int64_t{1} << modes.size();
  return FockOperator(std::move(modes), Matrix::Identity(d, d));
}

FockOperator FockOperator::zero(ModeList modes) {
  auto d = std::int64_t{1} << modes.size();
  return FockOperator(std::move(modes), Matrix::Zero(d, d));
}

Complex inner(const FockState& a, const FockState& b) {
  if (a.modes != b.modes || a.basis != b.basis)
    throw std::invalid_argument("inner product requires matching mode sets");
  return a.amps.dot(b.amps);
}

FockOperator outer(const FockState& a, const FockState& b) {
  if (a.modes != b.modes || a.basis != b.basis)
    throw std::invalid_argument("outer product requires matching mode sets");
  return FockOperator(a.modes, a.amps * b.amps.adjoint(), a.basis);
}

Complex vacuum_overlap(const std::vector<Mode>& left,
                       const std::vector<Mode>& right) {
  if (left.size() != right.size()) return 0.0;
  // The delta matrix W_ab = delta(i_a, j_b) is a partial permutation matrix,
  // so det W is 0 or the sign of the matching permutation.
  auto has_duplicates = [](std::vector<Mode> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
  };
  if (has_duplicates(left) || has_duplicates(right)) return 0.0;

  const std::size_t k = left.size();
  std::vector<int> perm(k);
  for (std::size_t a = 0; a < k; ++a) {
    auto it = std::find(right.begin(), right.end(), left[a]);
    if (it == right.end()) return 0.0;
    perm[a] = static_cast<int>(it - right.begin());
  }
  int inversions = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (perm[a] > perm[b]) ++inversions;
  return (inversions % 2 == 0) ? 1.0 : -1.0;
}

namespace {

enum class LadderKind { Create, Annihilate };

FockState apply_ladder(const FockState& st, Mode j, LadderKind kind) {
  if (st.basis != BasisTag::Canonical)
    throw std::invalid_argument("ladder operators act on the canonical basis");
  const int pos = mode_position(st.modes, j);
  const std::uint32_t bit = std::uint32_t{1} << pos;
  const std::uint32_t below = bit - 1;
  Vector out = Vector::Zero(st.amps.size());
  for (std::uint32_t p = 0; p < st.dim(); ++p) {
    Complex amp = st.amps[p];
    if (amp == Complex{}) continue;
    const bool occupied = p & bit;
    if (kind == LadderKind::Create ? occupied : !occupied) continue;
    const double sign = (popcount(p & below) % 2 == 0) ? 1.0 : -1.0;
    out[p ^ bit] += sign * amp;
  }
  return FockState(st.modes, std::move(out));
}

}  // namespace

FockState apply_creation(const FockState& st, Mode j) {
  return apply_ladder(st, j, LadderKind::Create);
}

FockState apply_annihilation(const FockState& st, Mode j) {
  return apply_ladder(st, j, LadderKind::Annihilate);
}

FockOperator creation_matrix(const ModeList& modes, Mode j) {
  const int pos = mode_position(modes, j);
  const std::uint32_t bit = std::uint32_t{1} << pos;
  const std::uint32_t below = bit - 1;
  auto d = std::int64_t{1} << modes.size();
  Matrix m = Matrix::Zero(d, d);
  for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(d); ++p) {
    if (p & bit) continue;
    const double sign = (popcount(p & below) % 2 == 0) ? 1.0 : -1.0;
    m(p | bit, p) = sign;
  }
  return FockOperator(modes, std::move(m));
}

FockOperator annihilation_matrix(const ModeList& modes, Mode j) {
  FockOperator c = creation_matrix(modes, j);
  return FockOperator(modes, c.entries.adjoint());
}

WedgePlan::WedgePlan(const ModeList& a_modes, const ModeList& b_modes) {
  check_mode_list(a_modes);
  check_mode_list(b_modes);
  merged_.resize(a_modes.size() + b_modes.size());
  std::merge(a_modes.begin(), a_modes.end(), b_modes.begin(), b_modes.end(),
             merged_.begin());
  for (std::size_t i = 1; i < merged_.size(); ++i)
    if (merged_[i] == merged_[i - 1])
      throw std::invalid_argument("wedge factors must live on disjoint modes");
  check_mode_list(merged_);

  a_pos_.reserve(a_modes.size());
  for (Mode m : a_modes) a_pos_.push_back(mode_position(merged_, m));
  b_pos_.reserve(b_modes.size());
  for (Mode m : b_modes) b_pos_.push_back(mode_position(merged_, m));

  // For every b-mode, the set of a-positions with a larger global label.
  a_above_b_.resize(b_modes.size(), 0);
  for (std::size_t b = 0; b < b_modes.size(); ++b)
    for (std::size_t a = 0; a < a_modes.size(); ++a)
      if (a_modes[a] > b_modes[b])
        a_above_b_[b] |= std::uint32_t{1} << a;
}

std::uint32_t WedgePlan::merge_pattern(std::uint32_t a_bits,
                                       std::uint32_t b_bits) const {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < a_pos_.size(); ++i)
    if (a_bits >> i & 1u) out |= std::uint32_t{1} << a_pos_[i];
  for (std::size_t i = 0; i < b_pos_.size(); ++i)
    if (b_bits >> i & 1u) out |= std::uint32_t{1} << b_pos_[i];
  return out;
}

int WedgePlan::sign(std::uint32_t a_bits, std::uint32_t b_bits) const {
  // Crossings: pairs (x in a-string, y in b-string) with label(x) > label(y).
  int crossings = 0;
  std::uint32_t rest = b_bits;
  while (rest) {
    const int b = std::countr_zero(rest);
    rest &= rest - 1;
    crossings += popcount(a_bits & a_above_b_[static_cast<std::size_t>(b)]);
  }
  return (crossings % 2 == 0) ? 1 : -1;
}

std::pair<std::uint32_t, std::uint32_t> WedgePlan::split_pattern(
    std::uint32_t m) const {
  std::uint32_t a = 0, b = 0;
  for (std::size_t i = 0; i < a_pos_.size(); ++i)
    if (m >> a_pos_[i] & 1u) a |= std::uint32_t{1} << i;
  for (std::size_t i = 0; i < b_pos_.size(); ++i)
    if (m >> b_pos_[i] & 1u) b |= std::uint32_t{1} << i;
  return {a, b};
}

FockState wedge(const FockState& a, const FockState& b) {
  if (a.basis != BasisTag::Canonical || b.basis != BasisTag::Canonical)
    throw std::invalid_argument("wedge acts on canonical-basis values");
  WedgePlan plan(a.modes, b.modes);
  Vector out = Vector::Zero(static_cast<std::int64_t>(plan.merged_dim()));
  for (std::uint32_t p = 0; p < a.dim(); ++p) {
    if (a.amps[p] == Complex{}) continue;
    for (std::uint32_t q = 0; q < b.dim(); ++q) {
      if (b.amps[q] == Complex{}) continue;
      out[plan.merge_pattern(p, q)] +=
          static_cast<double>(plan.sign(p, q)) * a.amps[p] * b.amps[q];
    }
  }
  return FockState(plan.merged(), std::move(out));
}

FockOperator wedge(const FockOperator& a, const FockOperator& b) {
  if (a.basis != BasisTag::Canonical || b.basis != BasisTag::Canonical)
    throw std::invalid_argument("wedge acts on canonical-basis values");
  WedgePlan plan(a.modes, b.modes);
  const auto d = static_cast<std::int64_t>(plan.merged_dim());
  Matrix out = Matrix::Zero(d, d);
  const std::uint32_t da = static_cast<std::uint32_t>(a.dim());
  const std::uint32_t db = static_cast<std::uint32_t>(b.dim());
  // Monomial rule: (|pa><qa|) ^ (|pb><qb|) = s(pa,pb) s(qa,qb) |pa^pb><qa^qb|.
  for (std::uint32_t pa = 0; pa < da; ++pa)
    for (std::uint32_t qa = 0; qa < da; ++qa) {
      const Complex va = a.entries(pa, qa);
      if (va == Complex{}) continue;
      for (std::uint32_t pb = 0; pb < db; ++pb) {
        const int ket_sign = plan.sign(pa, pb);
        const std::uint32_t row = plan.merge_pattern(pa, pb);
        for (std::uint32_t qb = 0; qb < db; ++qb) {
          const Complex vb = b.entries(pb, qb);
          if (vb == Complex{}) continue;
          const double s = static_cast<double>(ket_sign * plan.sign(qa, qb));
          out(row, plan.merge_pattern(qa, qb)) += s * va * vb;
        }
      }
    }
  return FockOperator(plan.merged(), std::move(out));
}

FockOperator embed(const FockOperator& local, const ModeList& global_modes) {
  ModeList rest;
  for (Mode m : global_modes)
    if (!std::binary_search(local.modes.begin(), local.modes.end(), m))
      rest.push_back(m);
  if (rest.size() + local.modes.size() != global_modes.size())
    throw std::invalid_argument("local modes are not a subset of the target");
  if (rest.empty()) return local;
  return wedge(local, FockOperator::identity(rest));
}

FockOperator number_operator(int n_modes) {
  ModeList modes(static_cast<std::size_t>(n_modes));
  for (int i = 0; i < n_modes; ++i) modes[static_cast<std::size_t>(i)] = i + 1;
  auto d = std::int64_t{1} << n_modes;
  Matrix m = Matrix::Zero(d, d);
  for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(d); ++p)
    m(p, p) = static_cast<double>(popcount(p));
  return FockOperator(std::move(modes), std::move(m));
}

FockOperator parity_operator(int n_modes) {
  FockOperator n = number_operator(n_modes);
  auto d = n.entries.rows();
  Matrix m = Matrix::Zero(d, d);
  for (std::int64_t p = 0; p < d; ++p)
    m(p, p) = (static_cast<int>(n.entries(p, p).real()) % 2 == 0) ? 1.0 : -1.0;
  return FockOperator(n.modes, std::move(m));
}

Matrix wedge_columns(const ModeList& system_modes, const FockState& x) {
  WedgePlan plan(system_modes, x.modes);
  const auto rows = static_cast<std::int64_t>(plan.merged_dim());
  const auto cols = std::int64_t{1} << system_modes.size();
  Matrix w = Matrix::Zero(rows, cols);
  for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(cols); ++p)
    for (std::uint32_t q = 0; q < x.dim(); ++q) {
      if (x.amps[q] == Complex{}) continue;
      w(plan.merge_pattern(p, q), p) +=
          static_cast<double>(plan.sign(p, q)) * x.amps[q];
    }
  return w;
}

}  // namespace fermiqit
