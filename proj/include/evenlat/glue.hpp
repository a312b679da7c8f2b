#pragma once

#include <optional>
#include <string>

#include "evenlat/discform.hpp"

namespace evenlat {

// A subgroup of left ⊕ right given by generators in concatenated coordinates
// (left part first).
struct GlueMap {
  FiniteQuadraticForm left;
  FiniteQuadraticForm right;
  std::vector<Element> graph;

  FiniteQuadraticForm sum() const { return orthogonal_sum(left, right); }
};

// InvalidInput unless the generated subgroup is isotropic. With
// anti_isometry, also requires both projections to be bijective, so the
// subgroup is the graph of an isometry left -> -right.
void validate_glue(const GlueMap& glue, bool anti_isometry);

// The graph of some anti-isometry a -> b, if one exists at this budget.
std::optional<GlueMap> find_anti_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                          std::size_t budget);

struct Overlattice {
  IntegralLattice lattice;
  RatMatrix basis;      // basis of M in the rational coordinates of the original lattice
  Embedding inclusion;  // the original lattice inside M
};

// The lattice generated by the rows of `gram`'s basis together with the
// rational `lifts`. InvalidInput if the result is not integral and even.
Overlattice overlattice_from_lifts(const IntMatrix& gram, const RatMatrix& lifts);

// π⁻¹(H) ⊂ L^∨ for H ⊂ discriminant_form(L).form.
Overlattice overlattice(const IntegralLattice& lattice, const Subgroup& h);

struct K3Gluing {
  Overlattice result;  // overlattice of L ⊕ T
  Embedding hyperbolic;
  Embedding transcendental;
};

// Glue L (signature (1, r-1)) and T (signature (2, 20-r)) along the graph of
// an anti-isometry A_T -> A_L. The glue's left form must equal
// discriminant_form(T).form and its right form discriminant_form(L).form.
K3Gluing glue_to_k3(const IntegralLattice& l, const IntegralLattice& t, const GlueMap& glue);

struct CriterionResult {
  bool satisfied;
  std::string reason;
};

// Sufficient condition for uniqueness of the primitive embedding of a
// hyperbolic lattice into the K3 lattice: ℓ(A_L) ≤ 20 - rank(L).
CriterionResult check_unique_embedding(const IntegralLattice& l);
// Sufficient condition for uniqueness in the genus of an indefinite lattice:
// ℓ(A_S) ≤ rank(S) - 2.
CriterionResult check_unique_in_genus(const IntegralLattice& s);

}  // namespace evenlat
