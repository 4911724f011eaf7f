#include "fermiqit/ptrace.hpp"

#include <algorithm>
#include <bit>

#include "fermiqit/sampling.hpp"
#include "fermiqit/ssr.hpp"

namespace fermiqit {

FockOperator ptrace_mode(const FockOperator& rho, Mode m) {
  if (rho.basis != BasisTag::Canonical)
    throw std::invalid_argument("partial trace acts on the canonical basis");
  auto it = std::lower_bound(rho.modes.begin(), rho.modes.end(), m);
  if (it == rho.modes.end() || *it != m)
    throw std::invalid_argument("unknown mode label " + std::to_string(m));
  const int pos = static_cast<int>(it - rho.modes.begin());
  const std::uint32_t bit = std::uint32_t{1} << pos;
  const std::uint32_t low = bit - 1;

  ModeList out_modes;
  out_modes.reserve(rho.modes.size() - 1);
  for (Mode x : rho.modes)
    if (x != m) out_modes.push_back(x);

  const auto dim = static_cast<std::uint32_t>(rho.dim());
  Matrix out = Matrix::Zero(dim / 2, dim / 2);
  auto drop_bit = [&](std::uint32_t p) {
    return (p & low) | ((p >> 1) & ~low);
  };
  for (std::uint32_t s = 0; s < dim; ++s) {
    for (std::uint32_t r = 0; r < dim; ++r) {
      const Complex v = rho.entries(s, r);
      if (v == Complex{}) continue;
      if ((s & bit) != (r & bit)) continue;  // delta(s_m, r_m)
      double sign = 1.0;
      if (s & bit) {
        const int k = std::popcount(s >> (pos + 1)) +
                      std::popcount(r >> (pos + 1));
        sign = (k % 2 == 0) ? 1.0 : -1.0;
      }
      out(drop_bit(s), drop_bit(r)) += sign * v;
    }
  }
  return FockOperator(std::move(out_modes), std::move(out));
}

FockOperator ptrace(const FockOperator& rho, const ModeList& traced) {
  for (Mode m : traced)
    if (!std::binary_search(rho.modes.begin(), rho.modes.end(), m))
      throw std::invalid_argument("traced set is not a subset of the modes");
  ModeList order(traced);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  if (order.size() != traced.size())
    throw std::invalid_argument("traced set contains duplicates");
  FockOperator out = rho;
  // Any order gives the same result; highest-first keeps the sums short.
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    out = ptrace_mode(out, *it);
  return out;
}

FockOperator product_trace_shortcut(const FockState& a, const FockState& b,
                                    const FockState& c, const FockState& d,
                                    bool trace_first) {
  if (a.modes != b.modes || c.modes != d.modes)
    throw std::invalid_argument("bra and ket must share a mode set");
  WedgePlan disjointness_check(a.modes, c.modes);  // throws on overlap
  (void)disjointness_check;
  // The sign cancellation needs definite parities that balance globally,
  // i.e. |a><b| ^ |c><d| must sit inside the block-diagonal sector.
  if ((definite_parity(a) + definite_parity(c)) % 2 !=
      (definite_parity(b) + definite_parity(d)) % 2)
    throw SsrError("product trace shortcut needs a parity-balanced monomial");
  if (trace_first) {
    FockOperator out = outer(c, d);
    out.entries *= inner(b, a);
    return out;
  }
  FockOperator out = outer(a, b);
  out.entries *= inner(d, c);
  return out;
}

double consistency_check(const FockOperator& rho_ab, const FockOperator& rho_a,
                         const ModeList& a_modes, int trials,
                         std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if ((std::size_t{1} << a_modes.size()) != rho_a.dim())
    throw std::invalid_argument("marginal dimension does not match a_modes");
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const FockOperator obs = random_ssr_observable(rng, a_modes);
    const FockOperator global = embed(obs, rho_ab.modes);
    const Complex lhs = (global.entries * rho_ab.entries).trace();
    const Complex rhs = (obs.entries * rho_a.entries).trace();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace fermiqit
