#pragma once

#include <optional>

#include "evenlat/matrix.hpp"

namespace evenlat {

struct SmithForm {
  IntMatrix D;  // diagonal, d_1 | d_2 | ..., all d_i >= 0
  IntMatrix P;  // unimodular, rows x rows
  IntMatrix Q;  // unimodular, cols x cols
  std::size_t rank = 0;

  // The first min(rows, cols) diagonal entries.
  IntVector diagonal() const;
};

// P·M·Q = D.
SmithForm smith_normal_form(const IntMatrix& m);

// Nonzero invariant factors of m, including units.
IntVector elementary_divisors(const IntMatrix& m);

// Row-style Hermite normal form of the row lattice: upper echelon, positive
// pivots, entries above each pivot reduced into [0, pivot). Zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

// Fraction-free (Bareiss) determinant.
Int determinant(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

// Gauss-Jordan inverse over Q; InvalidInput if singular.
RatMatrix inverse(const RatMatrix& m);
RatMatrix inverse(const IntMatrix& m);

// Basis (as rows) of { x in Z^rows : x·m = 0 }, primitive by construction.
IntMatrix left_kernel(const IntMatrix& m);

// Some integer y with y·m = x, if one exists.
std::optional<IntVector> solve_integer_row(const IntMatrix& m, const IntVector& x);

// Coordinates c with c·basis = v, if v lies in the Q-span of the rows of basis.
std::optional<RatVector> solve_row(const RatMatrix& basis, const RatVector& v);

// Integer coordinates of every row of `vectors` in the row basis `basis`
// (full row rank); nullopt if some row is not in the Z-span.
std::optional<IntMatrix> integer_coordinates(const IntMatrix& basis, const IntMatrix& vectors);

}  // namespace evenlat
