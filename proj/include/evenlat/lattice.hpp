#pragma once

#include <optional>
#include <string>

#include "evenlat/matrix.hpp"
#include "evenlat/normal_form.hpp"

namespace evenlat {

struct Signature {
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;

  std::size_t rank() const { return n_plus + n_minus; }
  bool is_definite() const { return n_plus == 0 || n_minus == 0; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

// An even lattice, given by its symmetric Gram matrix. The pairing of row
// vectors x, y (coordinates in the lattice basis) is x·G·yᵀ.
class IntegralLattice {
 public:
  // Throws InvalidInput unless gram is square, symmetric, non-degenerate and
  // has even diagonal.
  explicit IntegralLattice(IntMatrix gram, std::string label = {});

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  const std::string& label() const { return label_; }
  const Int& det() const { return det_; }

  Int pair(const IntVector& x, const IntVector& y) const { return pairing(x, gram_, y); }
  Int norm(const IntVector& x) const { return pairing(x, gram_, x); }

  IntegralLattice relabeled(std::string label) const;

 private:
  IntMatrix gram_;
  std::string label_;
  Int det_;
};

// A sublattice of `ambient` spanned by the rows of `basis` (ambient coordinates).
class Embedding {
 public:
  // Throws InvalidInput unless basis has full row rank and an even induced Gram.
  Embedding(IntegralLattice ambient, IntMatrix basis);

  const IntegralLattice& ambient() const { return ambient_; }
  const IntMatrix& basis() const { return basis_; }
  bool primitive() const { return primitive_; }
  std::size_t rank() const { return basis_.rows(); }

  // basis · G · basisᵀ as a lattice.
  IntegralLattice sublattice(std::string label = {}) const;

 private:
  IntegralLattice ambient_;
  IntMatrix basis_;
  bool primitive_ = false;
};

Signature signature(const IntegralLattice& lattice);
bool is_definite(const IntegralLattice& lattice);

IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b);
// Gram scaled by n; InvalidInput for n = 0 or an odd result.
IntegralLattice rescale(const IntegralLattice& lattice, const Int& n);

// The primitive closure (E ⊗ Q) ∩ ambient, basis in Hermite form.
Embedding saturation(const Embedding& e);
// [saturation(e) : e].
Int saturation_index(const Embedding& e);
// { x in ambient : (x, e) = 0 }, basis in Hermite form.
Embedding orthogonal_complement(const Embedding& e);

// Same Q-span and same Z-span.
bool same_sublattice(const IntMatrix& a, const IntMatrix& b);

namespace builtin {
IntegralLattice hyperbolic_plane();  // U
IntegralLattice a1();                // <2>
IntegralLattice a2();
IntegralLattice d4();
IntegralLattice e8();
IntegralLattice e8_minus();          // E8(-1)
IntegralLattice k3();                // U^3 + E8(-1)^2
IntegralLattice diagonal(std::initializer_list<long> entries);

// Resolves a label: one of U, A1, A2, D4, E8, E8minus, K3, or a '+'-separated
// sum of terms such as "U^2+<-2>" or "A2(-1)" (power ^k, rescale (n), rank
// one <n>). Nullopt if the expression is not understood.
std::optional<IntegralLattice> lookup(const std::string& expr);
}  // namespace builtin

}  // namespace evenlat
