#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evenlat/discform.hpp"

namespace evenlat {

bool is_prime(long p);
// v_p(x) for x != 0.
long valuation(const Int& x, long p);
// 1 for a nonzero square mod p, -1 for a nonsquare, 0 for 0.
int legendre(const Int& a, long p);

// Normalized representatives (first nonzero coordinate 1) of the lines of
// F_p^n, in lexicographic order. Refusal if there are more than `limit`.
std::vector<std::vector<long>> projective_points(std::size_t n, long p, std::size_t limit = 20000000);

// Scales v mod p so its first nonzero entry is 1; InvalidInput if v ≡ 0.
std::vector<long> normalize_line(std::vector<long> v, long p);

struct LineClassCount {
  long p = 0;
  Int isotropic;  // (x,x) ≡ 0
  Int square;     // (x,x) a nonzero square
  Int nonsquare;
  Int total() const { return isotropic + square + nonsquare; }
};

// Exhaustive classification of the lines of S ⊗ F_p. InvalidInput if p is
// not an odd prime or divides det(S).
LineClassCount line_classes(const IntegralLattice& s, long p);

struct IndexPSublattice {
  long p = 0;
  std::vector<long> alpha;                     // S' = ker(x -> alpha·x mod p), normalized
  IntMatrix basis;                             // Hermite basis of S' in S coordinates
  std::optional<std::vector<long>> dual_line;  // v with S' = {x : (x,v) ≡ 0}, when p ∤ det
};

// The sublattice ker(alpha mod p). InvalidInput if alpha ≡ 0.
IndexPSublattice index_p_sublattice(const IntegralLattice& s, long p, const std::vector<long>& alpha);
// All (p^n - 1)/(p - 1) of them, ordered by alpha.
std::vector<IndexPSublattice> enumerate_index_p_sublattices(const IntegralLattice& s, long p);

enum class PPart { Elementary, Cyclic };  // (Z/p)² or Z/p²
std::string to_string(PPart tag);

struct DiscSplit {
  FiniteQuadraticForm form;  // A_{S'}
  PPart tag;                 // read off the invariant factors of A_{S'}
  PPart predicted;           // Elementary iff the dual line is isotropic
  // The prime-to-p part of A_{S'} is isometric to A_S; unset when A_S
  // exceeds the isometry-search budget.
  std::optional<bool> prime_to_p_matches;
  std::size_t length = 0;    // ℓ(A_{S'})
  Int det;                   // det(S')
};

DiscSplit sublattice_disc_split(const IntegralLattice& s, const IndexPSublattice& sub, std::size_t budget = 4096);

struct PrimeChoice {
  long p = 0;
  LineClassCount counts;
  Int bound;  // ⌈min over nonempty classes / 4⌉
};

// ⌈min over nonempty line classes / 4⌉ at p.
Int line_bound(const LineClassCount& c);
// Smallest odd prime p ∤ det(S) with line_bound > n. Refusal unless S is
// indefinite of rank ≥ 3.
PrimeChoice choose_p(const IntegralLattice& s, const Int& n);

struct JordanBlock {
  long scale = 0;       // k, the block is U_k(p^k)
  std::size_t rank = 0;
  int det_class = 1;    // Legendre symbol of the unit part of the determinant
};

struct JordanDecomposition {
  long p = 0;
  long precision = 0;
  std::vector<JordanBlock> blocks;  // increasing scale
};

// Odd p only. precision defaults to v_p(det) + 2; Refusal naming the
// required precision when pivots cannot be certified.
JordanDecomposition jordan_decompose(const IntegralLattice& l, long p, std::optional<long> precision = {});

struct UnitNormVector {
  IntVector x;
  Int norm;
  RatMatrix reflection;  // y -> y - 2(y,x)/(x,x)·x, as rows
  bool integral = false; // the reflection matrix is integral over Z
};

// Prefers small x whose reflection is integral over Z; otherwise the
// reflection is only p-integral. Refusal if L ⊗ Z_p has no unimodular
// Jordan component.
UnitNormVector find_unit_norm_vector(const IntegralLattice& l, long p);

}  // namespace evenlat
