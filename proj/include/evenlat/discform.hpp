#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "evenlat/lattice.hpp"

namespace evenlat {

// Coordinates of a group element with respect to the generators of a
// FiniteQuadraticForm, each reduced modulo the generator order.
using Element = std::vector<std::int64_t>;

// A finite abelian group ⊕ Z/d_i with a Q/2Z-valued quadratic form q and
// its Q/Z-valued bilinear form b. Values are stored reduced into [0,2) and
// [0,1). Forms returned by discriminant_form, normalize and the JSON parser
// have invariant-factor orders d_1 | d_2 | ...; orthogonal_sum keeps the
// concatenated presentation so coordinates of both summands stay visible.
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm() = default;  // the trivial group
  // Throws InvalidInput when an order is < 2 or the compatibility laws
  // (q(g_i) ≡ b(g_i,g_i) mod 1, d_i·b(g_i,·) ≡ 0, d_i²·q(g_i) ≡ 0 mod 2) fail.
  FiniteQuadraticForm(std::vector<std::int64_t> orders, RatVector q, RatMatrix b);

  const std::vector<std::int64_t>& orders() const { return orders_; }
  std::size_t num_generators() const { return orders_.size(); }
  Int order() const;
  bool is_normalized() const;
  bool is_trivial() const { return orders_.empty(); }

  const Rat& q_generator(std::size_t i) const { return q_[i]; }
  const Rat& b_generator(std::size_t i, std::size_t j) const { return b_(i, j); }
  const RatMatrix& b_matrix() const { return b_; }
  const RatVector& q_values() const { return q_; }

  Rat q(const Element& x) const;
  Rat b(const Element& x, const Element& y) const;
  // Numerators over 2·exponent() and exponent() respectively.
  std::int64_t q_numerator(const Element& x) const;
  std::int64_t b_numerator(const Element& x, const Element& y) const;
  bool is_isotropic(const Element& x) const { return q_numerator(x) == 0; }
  bool orthogonal(const Element& x, const Element& y) const { return b_numerator(x, y) == 0; }
  std::int64_t exponent() const { return exponent_; }

  Element zero() const { return Element(orders_.size(), 0); }
  Element generator(std::size_t i) const;
  Element reduce(Element x) const;
  Element add(const Element& x, const Element& y) const;
  Element scale(const Element& x, std::int64_t n) const;
  std::int64_t element_order(const Element& x) const;

  // All elements in mixed-radix order; Refusal if |A| > budget.
  std::vector<Element> elements(std::size_t budget) const;

  friend bool operator==(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
    return a.orders_ == b.orders_ && a.q_ == b.q_ && a.b_ == b.b_;
  }

 private:
  std::vector<std::int64_t> orders_;
  RatVector q_;
  RatMatrix b_;
  std::int64_t exponent_ = 1;
  std::vector<std::int64_t> qnum_;  // q_i · 2·exponent, in [0, 4·exponent)
  std::vector<std::int64_t> bnum_;  // b_ij · exponent, in [0, exponent), row-major
};

// The discriminant form of an even lattice, with the maps between rational
// coordinates of L^∨ (in the lattice basis) and group coordinates.
struct DiscriminantForm {
  FiniteQuadraticForm form;
  RatMatrix generators;      // k × n, row i lifts generator i into L^∨
  IntMatrix coordinate_map;  // n × k, group coordinates of y are y·coordinate_map mod d
  IntMatrix gram;            // of the lattice, for the dual-membership test

  // InvalidInput if y is not in L^∨.
  Element to_group(const RatVector& y) const;
  RatVector lift(const Element& x) const;
};

DiscriminantForm discriminant_form(const IntegralLattice& lattice);

FiniteQuadraticForm negate(const FiniteQuadraticForm& a);
// Minimal number of generators.
std::size_t length(const FiniteQuadraticForm& a);
// Concatenated presentation; coordinates are (a-part, b-part).
FiniteQuadraticForm orthogonal_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

struct Subgroup {
  std::vector<Element> generators;
  IntMatrix hnf;  // Hermite form of generators stacked with diag(orders); canonical key
  Int order;

  friend bool operator==(const Subgroup& x, const Subgroup& y) { return x.hnf == y.hnf; }
};

Subgroup make_subgroup(const FiniteQuadraticForm& a, std::vector<Element> generators);
bool contains(const Subgroup& h, const Element& x);
std::vector<Element> subgroup_elements(const FiniteQuadraticForm& a, const Subgroup& h,
                                       std::size_t budget);
bool is_isotropic(const FiniteQuadraticForm& a, const Subgroup& h);

// All subgroups on which q vanishes, sorted by (order, Hermite key).
std::vector<Subgroup> enumerate_isotropic_subgroups(const FiniteQuadraticForm& a, std::size_t budget);

// The orthogonal complement of h with respect to b.
Subgroup orthogonal_of_subgroup(const FiniteQuadraticForm& a, const Subgroup& h);

// K/H for subgroups H ⊆ K of a, presented in invariant-factor form.
struct Subquotient {
  FiniteQuadraticForm form;
  std::vector<Element> representatives;  // in the ambient form, one per generator of `form`

  // Coordinates in `form` of an element of K.
  Element project(const FiniteQuadraticForm& ambient, const Element& x) const;

  // Presentation data used by project().
  std::vector<Element> k_generators;
  std::vector<Element> h_generators;
  IntMatrix transform;              // Q of the Smith form of the relation module
  std::vector<std::size_t> kept;    // indices of invariant factors > 1
};

// Requires H isotropic and H ⊆ K ⊆ H^⊥ for the induced form to be defined;
// normalize() and quotient_form() guarantee this.
Subquotient subquotient(const FiniteQuadraticForm& a, const std::vector<Element>& k_generators,
                        const std::vector<Element>& h_generators);

// H^⊥/H. InvalidInput if h is not isotropic.
Subquotient quotient_form(const FiniteQuadraticForm& a, const Subgroup& h);

// The same form in invariant-factor presentation.
Subquotient normalize(const FiniteQuadraticForm& a);
// normalize(orthogonal_sum(a, b)).form
FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

// A homomorphism given by the images of the generators of its source.
struct FqfIsometry {
  std::vector<Element> images;

  Element apply(const FiniteQuadraticForm& target, const Element& x) const;
  bool is_identity(const FiniteQuadraticForm& a) const;
  IntMatrix matrix() const;

  friend auto operator<=>(const FqfIsometry&, const FqfIsometry&) = default;
};

FqfIsometry compose(const FiniteQuadraticForm& a, const FqfIsometry& outer, const FqfIsometry& inner);
FqfIsometry identity_isometry(const FiniteQuadraticForm& a);
// True iff phi: a -> b preserves orders, q and b and is bijective.
bool is_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, const FqfIsometry& phi);

// O(A) by backtracking over generator images, sorted; Refusal if |A| > budget.
std::vector<FqfIsometry> isometry_group(const FiniteQuadraticForm& a, std::size_t budget);

// The lexicographically first isometry a -> b, if any.
std::optional<FqfIsometry> find_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                         std::size_t budget);

}  // namespace evenlat
