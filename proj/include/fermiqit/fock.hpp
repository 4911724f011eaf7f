// fock.hpp
// Occupation-number basis management, anticommutation sign algebra, and the
// wedge product on states and operators.
//
// Conventions used throughout the library:
//  * The canonical basis vector with occupation pattern s1..sN is the
//    ascending creation string (f1^+)^s1 ... (fN^+)^sN |vac> with
//    coefficient +1.
//  * Its index is sum_i s_i 2^(i-1): mode 1 is the least significant bit,
//    so the basis lists |vac>, |1>, |2>, |1^2>, |3>, ...
//  * Wedge products reorder concatenated creation strings into ascending
//    global mode order; the sign is the parity of the sorting permutation.
//  * Bra strings are the adjoints of ket strings, so <u| ^ <v| = (|u> ^ |v>)^+.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fermiqit/types.hpp"

namespace fermiqit {

enum class BasisTag { Canonical, ParitySorted };

// An N-bit occupation vector; the canonical label of a Fock basis element.
// Bit (i-1) of `bits` holds the occupation of mode i.
struct OccPattern {
  int n_modes = 0;
  std::uint32_t bits = 0;

  int particle_number() const;
  bool even() const { return particle_number() % 2 == 0; }

  // Bitstring with the leftmost character describing mode 1, e.g. "110"
  // for modes 1 and 2 occupied out of 3.
  std::string to_string() const;
  static OccPattern from_string(const std::string& s);

  friend bool operator==(const OccPattern&, const OccPattern&) = default;
};

std::size_t pattern_index(const OccPattern& p);
OccPattern index_pattern(std::size_t index, int n_modes);

// Complex amplitude vector of length 2^|modes| over the canonical basis.
struct FockState {
  ModeList modes;  // ascending global labels
  Vector amps;
  BasisTag basis = BasisTag::Canonical;

  FockState() = default;
  FockState(ModeList modes, Vector amps, BasisTag basis = BasisTag::Canonical);

  int mode_count() const { return static_cast<int>(modes.size()); }
  std::size_t dim() const { return static_cast<std::size_t>(amps.size()); }
  double norm() const { return amps.norm(); }
  FockState normalized() const;

  static FockState vacuum(ModeList modes);
  static FockState basis_state(ModeList modes, std::uint32_t pattern);
};

// Dense 2^N x 2^N operator over the canonical (or parity-sorted) basis.
struct FockOperator {
  ModeList modes;
  Matrix entries;
  BasisTag basis = BasisTag::Canonical;

  FockOperator() = default;
  FockOperator(ModeList modes, Matrix entries,
               BasisTag basis = BasisTag::Canonical);

  int mode_count() const { return static_cast<int>(modes.size()); }
  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }

  static FockOperator identity(ModeList modes);
  static FockOperator zero(ModeList modes);
};

Complex inner(const FockState& a, const FockState& b);        // <a|b>
FockOperator outer(const FockState& a, const FockState& b);   // |a><b|

// <vac| f_{i_k}..f_{i_1} f_{j_1}^+..f_{j_m}^+ |vac>, evaluated exactly as the
// delta-matrix determinant: 0 unless the lists are duplicate-free and equal
// as sets, else the sign of the matching permutation.
Complex vacuum_overlap(const std::vector<Mode>& left,
                       const std::vector<Mode>& right);

// f_j^+ / f_j applied to a canonical-basis state. The phase on a basis
// pattern is (-1)^(number of occupied modes below j).
FockState apply_creation(const FockState& st, Mode j);
FockState apply_annihilation(const FockState& st, Mode j);

// f_j^+ / f_j as dense matrices on the given mode set.
FockOperator creation_matrix(const ModeList& modes, Mode j);
FockOperator annihilation_matrix(const ModeList& modes, Mode j);

// Wedge products over disjoint mode sets. Results live on the sorted union.
FockState wedge(const FockState& a, const FockState& b);
FockOperator wedge(const FockOperator& a, const FockOperator& b);

// local ^ I_rest with the local factor leading the wedge. The crossing
// signs then equal the parity strings of occupied complement modes, so
// this is also the operator obtained by writing `local` as a polynomial
// in its own modes' creation/annihilation operators and evaluating it
// with the global matrices. Disjoint odd locals embedded this way
// anticommute; even ones commute with everything disjoint.
FockOperator embed(const FockOperator& local, const ModeList& global_modes);

// Diagonal number operator and parity operator Pi = exp(i pi n) on modes 1..n.
FockOperator number_operator(int n_modes);
FockOperator parity_operator(int n_modes);

// Columns are wedge(e_p, x) for every canonical basis pattern p on
// `system_modes`, with x a fixed state on disjoint modes. This is the
// workhorse behind partial inner products <x|_E A |y>_E, Stinespring
// Kraus extraction and Choi recovery.
Matrix wedge_columns(const ModeList& system_modes, const FockState& x);

// Sign bookkeeping shared by wedge/unweave operations: fast evaluation of
// the crossing parity between patterns on two disjoint sorted mode lists.
class WedgePlan {
 public:
  WedgePlan(const ModeList& a_modes, const ModeList& b_modes);

  const ModeList& merged() const { return merged_; }
  std::size_t merged_dim() const { return std::size_t{1} << merged_.size(); }

  // Index of the union pattern in the merged mode list.
  std::uint32_t merge_pattern(std::uint32_t a_bits, std::uint32_t b_bits) const;
  // +1/-1 parity of the permutation sorting (a-string, b-string) ascending.
  int sign(std::uint32_t a_bits, std::uint32_t b_bits) const;
  // Split a merged pattern back into its (a, b) parts.
  std::pair<std::uint32_t, std::uint32_t> split_pattern(std::uint32_t m) const;

 private:
  ModeList merged_;
  std::vector<int> a_pos_, b_pos_;               // positions in merged list
  std::vector<std::uint32_t> a_above_b_;         // a-bits with label > b-mode
};

}  // namespace fermiqit
