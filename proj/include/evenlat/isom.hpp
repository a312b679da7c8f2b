#pragma once

#include <string>
#include <vector>

#include "evenlat/discform.hpp"

namespace evenlat {

// An isometry of a lattice acting on row vectors, x -> x·g, so row i of
// `matrix` is the image of e_i and g·G·gᵀ = G.
class Isometry {
 public:
  // Throws InvalidInput if g does not preserve the Gram matrix.
  Isometry(const IntegralLattice& lattice, IntMatrix g);
  // Same, reusing a precomputed discriminant form of `lattice`.
  Isometry(const IntegralLattice& lattice, IntMatrix g, const DiscriminantForm& disc);

  const IntMatrix& matrix() const { return matrix_; }
  int det() const { return det_; }
  // Acts trivially on the discriminant group.
  bool stable() const { return stable_; }

  friend bool operator==(const Isometry& a, const Isometry& b) { return a.matrix_ == b.matrix_; }
  friend bool operator<(const Isometry& a, const Isometry& b) { return a.matrix_.data() < b.matrix_.data(); }

 private:
  IntMatrix matrix_;
  int det_ = 1;
  bool stable_ = true;
};

// The induced isometry of discriminant_form(lattice).form.
FqfIsometry induced_action(const DiscriminantForm& d, const IntMatrix& g);
bool is_stable(const IntMatrix& g, const IntegralLattice& lattice);

// Nonzero v with |(v,v)| ≤ bound, one of each ±v (first nonzero coordinate
// positive), sorted by |norm| then lexicographically. InvalidInput if the
// lattice is indefinite.
std::vector<IntVector> short_vectors(const IntegralLattice& lattice, const Int& bound);

// Vectors of norm -2, up to sign.
std::vector<IntVector> roots(const IntegralLattice& lattice);

// O(K) of a definite lattice, sorted by matrix entries. `budget` caps the
// number of search nodes; Refusal when it is exhausted.
std::vector<Isometry> automorphism_group(const IntegralLattice& k, std::size_t budget);

struct GroupReport {
  std::size_t order = 0;
  std::vector<Isometry> generators;
  std::size_t stable_order = 0;
  std::size_t stable_index = 0;
  bool closed = false;             // closed under products and inverses
  bool injective_mod3 = false;     // reduction mod 3 is injective
  bool divides_gl3 = false;        // order divides |GL_n(F_3)|
};

GroupReport group_report(const IntegralLattice& k, const std::vector<Isometry>& group);

// x -> x + (x,δ)·δ for (δ,δ) = -2.
Isometry reflection(const IntegralLattice& lattice, const IntVector& delta);

// The isometry of the (unimodular) ambient of `e` that is g on the
// sublattice and the identity on its orthogonal complement. InvalidInput if
// g is not stable, e not primitive or the ambient not unimodular.
Isometry extend_by_identity(const Isometry& g, const Embedding& e);
// The action of an isometry of the ambient on a sublattice it preserves.
IntMatrix restrict_to(const IntMatrix& f, const Embedding& e);

// Image of Stab(T,S)* in O(K), K = T^⊥ in S, computed on finite data.
struct StabImage {
  std::vector<Isometry> image;  // subgroup of O(K)
  std::size_t ok_order = 0;     // |O(K)|
  Int glue_order;               // |H|, H ⊂ A_T ⊕ A_K the glue of S
  Int degree_bound;             // 2·|image|
  std::vector<std::string> assumptions;
};

StabImage stab_image_in_OK(const Embedding& t_in_s, std::size_t budget);

}  // namespace evenlat
