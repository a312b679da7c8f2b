#include "evenlat/normal_form.hpp"

#include <algorithm>
#include <limits>

namespace evenlat {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

bool is_integral(const RatMatrix& m) {
  for (const auto& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rat& x = m(i, j);
      if (x.get_den() != 1) throw InvalidInput("matrix entry is not an integer");
      r(i, j) = x.get_num();
    }
  return r;
}

std::int64_t to_int64(const Int& x, const char* what) {
  if (!x.fits_slong_p()) throw Refusal(std::string(what) + " does not fit in 64 bits");
  return x.get_si();
}

IntVector SmithForm::diagonal() const {
  IntVector d;
  const std::size_t k = std::min(D.rows(), D.cols());
  d.reserve(k);
  for (std::size_t i = 0; i < k; ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  SmithForm out{m, IntMatrix::identity(rows), IntMatrix::identity(cols), 0};
  IntMatrix& A = out.D;
  IntMatrix& P = out.P;
  IntMatrix& Q = out.Q;

  auto swap_r = [&](std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    P.swap_rows(a, b);
  };
  auto swap_c = [&](std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    Q.swap_cols(a, b);
  };

  // rounded quotient keeps the remainders and the fill-in small
  auto nearest = [](const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), Int(2 * a + b).get_mpz_t(), Int(2 * b).get_mpz_t());
    return q;
  };

  std::size_t t = 0;
  const std::size_t limit = std::min(rows, cols);
  for (; t < limit; ++t) {
    for (;;) {
      // the smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (A(i, j) != 0 && (pi == rows || abs(A(i, j)) < abs(A(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) break;
      swap_r(t, pi);
      swap_c(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (A(i, t) == 0) continue;
        const Int q = nearest(A(i, t), A(t, t));
        A.add_row_multiple(i, t, -q);
        P.add_row_multiple(i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (A(t, j) == 0) continue;
        const Int q = nearest(A(t, j), A(t, t));
        A.add_col_multiple(j, t, -q);
        Q.add_col_multiple(j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // enforce d_t | every remaining entry
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            A.add_row_multiple(t, i, Int(1));
            P.add_row_multiple(t, i, Int(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A(t, t) == 0) break;
    if (A(t, t) < 0) {
      A.negate_row(t);
      P.negate_row(t);
    }
  }
  out.rank = t;
  return out;
}

IntVector elementary_divisors(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  IntVector d;
  for (std::size_t i = 0; i < s.rank; ++i) d.push_back(s.D(i, i));
  return d;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix A = m;
  const std::size_t rows = A.rows(), cols = A.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      while (A(i, c) != 0) {
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), A(r, c).get_mpz_t(), A(i, c).get_mpz_t());
        A.add_row_multiple(r, i, -q);
        A.swap_rows(r, i);
      }
    }
    if (A(r, c) == 0) continue;
    if (A(r, c) < 0) A.negate_row(r);
    for (std::size_t k = 0; k < r; ++k) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), A(k, c).get_mpz_t(), A(r, c).get_mpz_t());
      A.add_row_multiple(k, r, -q);
    }
    ++r;
  }
  return A.select_rows(0, r);
}

Int determinant(const IntMatrix& m) {
  if (!m.is_square()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix A = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t i = k + 1;
      while (i < n && A(i, k) == 0) ++i;
      if (i == n) return 0;
      A.swap_rows(k, i);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(A(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) { return hermite_normal_form(m).rows(); }

RatMatrix inverse(const RatMatrix& m) {
  if (!m.is_square()) throw InvalidInput("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix A = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A(p, c) == 0) ++p;
    if (p == n) throw InvalidInput("matrix is singular");
    A.swap_rows(c, p);
    inv.swap_rows(c, p);
    const Rat piv = A(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      A(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || A(i, c) == 0) continue;
      const Rat f = -A(i, c);
      A.add_row_multiple(i, c, f);
      inv.add_row_multiple(i, c, f);
    }
  }
  return inv;
}

RatMatrix inverse(const IntMatrix& m) { return inverse(to_rational(m)); }

IntMatrix left_kernel(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  return s.P.select_rows(s.rank, m.rows() - s.rank);
}

std::optional<IntVector> solve_integer_row(const IntMatrix& m, const IntVector& x) {
  if (x.size() != m.cols()) throw InvalidInput("solve_integer_row: dimension mismatch");
  // y·P^{-1}·D·Q^{-1} = x  <=>  z·D = x·Q with y = z·P
  const auto s = smith_normal_form(m);
  const IntVector xq = row_times(x, s.Q);
  IntVector z(m.rows());
  for (std::size_t i = 0; i < xq.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(xq[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(z[i].get_mpz_t(), xq[i].get_mpz_t(), s.D(i, i).get_mpz_t());
    } else if (xq[i] != 0) {
      return std::nullopt;
    }
  }
  return row_times(z, s.P);
}

std::optional<RatVector> solve_row(const RatMatrix& basis, const RatVector& v) {
  // Solve basisᵀ · cᵀ = vᵀ by elimination on the augmented system.
  const std::size_t k = basis.rows(), n = basis.cols();
  if (v.size() != n) throw InvalidInput("solve_row: dimension mismatch");
  RatMatrix A(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) A(i, j) = basis(j, i);
    A(i, k) = v[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && A(p, c) == 0) ++p;
    if (p == n) continue;
    A.swap_rows(r, p);
    const Rat piv = A(r, c);
    for (std::size_t j = 0; j <= k; ++j) A(r, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || A(i, c) == 0) continue;
      A.add_row_multiple(i, r, Rat(-A(i, c)));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (A(i, k) != 0) return std::nullopt;
  RatVector c(k);
  for (std::size_t i = 0; i < r; ++i) c[pivot_col[i]] = A(i, k);
  return c;
}

std::optional<IntMatrix> integer_coordinates(const IntMatrix& basis, const IntMatrix& vectors) {
  const RatMatrix b = to_rational(basis);
  IntMatrix out(vectors.rows(), basis.rows());
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    RatVector v(vectors.cols());
    for (std::size_t j = 0; j < vectors.cols(); ++j) v[j] = vectors(i, j);
    auto c = solve_row(b, v);
    if (!c) return std::nullopt;
    for (std::size_t j = 0; j < c->size(); ++j) {
      if ((*c)[j].get_den() != 1) return std::nullopt;
      out(i, j) = (*c)[j].get_num();
    }
  }
  return out;
}

}  // namespace evenlat
