#include "evenlat/discform.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace evenlat {

namespace {

constexpr std::int64_t kMaxExponent = std::int64_t{1} << 40;

using i128 = __int128;

std::int64_t mod(i128 a, std::int64_t m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

// x mod m for rationals, into [0, m)
Rat reduce_mod(const Rat& x, long m) {
  Int fl;
  Rat y = x / m;
  mpz_fdiv_q(fl.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  Rat r = x - Rat(fl * m);
  r.canonicalize();
  return r;
}

std::int64_t scaled_numerator(const Rat& x, std::int64_t scale, const char* what) {
  Rat y = x * Rat(Int(scale));
  y.canonicalize();
  if (y.get_den() != 1) throw InvalidInput(std::string(what) + " has a denominator not dividing the group exponent");
  return to_int64(y.get_num(), what);
}

}  // namespace

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<std::int64_t> orders, RatVector q, RatMatrix b)
    : orders_(std::move(orders)), q_(std::move(q)), b_(std::move(b)) {
  const std::size_t k = orders_.size();
  if (q_.size() != k || b_.rows() != k || b_.cols() != k)
    throw InvalidInput("finite quadratic form: sizes of orders, q and b disagree");
  exponent_ = 1;
  for (auto d : orders_) {
    if (d < 2) throw InvalidInput("finite quadratic form: generator order must be > 1");
    exponent_ = std::lcm(exponent_, d);
    if (exponent_ > kMaxExponent) throw Refusal("finite quadratic form: group exponent too large");
  }
  for (auto& x : q_) x = reduce_mod(x, 2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b_(i, j) = reduce_mod(b_(i, j), 1);
  if (!b_.is_symmetric()) throw InvalidInput("finite quadratic form: b is not symmetric");
  for (std::size_t i = 0; i < k; ++i) {
    if (reduce_mod(q_[i], 1) != b_(i, i)) throw InvalidInput("finite quadratic form: q(g) ≢ b(g,g) mod 1");
    if (reduce_mod(Rat(Int(orders_[i]) * Int(orders_[i])) * q_[i], 2) != 0)
      throw InvalidInput("finite quadratic form: d²·q(g) ≢ 0 mod 2");
    for (std::size_t j = 0; j < k; ++j)
      if (reduce_mod(Rat(Int(orders_[i])) * b_(i, j), 1) != 0)
        throw InvalidInput("finite quadratic form: d·b(g_i, g_j) ≢ 0 mod 1");
  }
  qnum_.resize(k);
  bnum_.resize(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    qnum_[i] = scaled_numerator(q_[i], 2 * exponent_, "q value");
    for (std::size_t j = 0; j < k; ++j) bnum_[i * k + j] = scaled_numerator(b_(i, j), exponent_, "b value");
  }
}

Int FiniteQuadraticForm::order() const {
  Int n = 1;
  for (auto d : orders_) n *= Int(static_cast<long>(d));
  return n;
}

bool FiniteQuadraticForm::is_normalized() const {
  for (std::size_t i = 0; i + 1 < orders_.size(); ++i)
    if (orders_[i + 1] % orders_[i] != 0) return false;
  return true;
}

std::int64_t FiniteQuadraticForm::q_numerator(const Element& x) const {
  const std::size_t k = orders_.size();
  const std::int64_t m = 4 * exponent_;
  i128 acc = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    acc += mod(i128(x[i]) * x[i] % m * qnum_[i], m);
    for (std::size_t j = i + 1; j < k; ++j)
      if (x[j] != 0) acc += mod(4 * (i128(x[i]) * x[j] % m) * bnum_[i * k + j], m);
    acc %= m;
  }
  return mod(acc, m);
}

std::int64_t FiniteQuadraticForm::b_numerator(const Element& x, const Element& y) const {
  const std::size_t k = orders_.size();
  i128 acc = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j)
      if (y[j] != 0) acc = (acc + mod(i128(x[i]) * y[j] % exponent_ * bnum_[i * k + j], exponent_)) % exponent_;
  }
  return mod(acc, exponent_);
}

Rat FiniteQuadraticForm::q(const Element& x) const {
  Rat r(Int(static_cast<long>(q_numerator(x))), Int(static_cast<long>(2 * exponent_)));
  r.canonicalize();
  return r;
}

Rat FiniteQuadraticForm::b(const Element& x, const Element& y) const {
  Rat r(Int(static_cast<long>(b_numerator(x, y))), Int(static_cast<long>(exponent_)));
  r.canonicalize();
  return r;
}

Element FiniteQuadraticForm::generator(std::size_t i) const {
  Element e = zero();
  e[i] = 1;
  return e;
}

Element FiniteQuadraticForm::reduce(Element x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = mod(x[i], orders_[i]);
  return x;
}

Element FiniteQuadraticForm::add(const Element& x, const Element& y) const {
  Element z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod(i128(x[i]) + y[i], orders_[i]);
  return z;
}

Element FiniteQuadraticForm::scale(const Element& x, std::int64_t n) const {
  Element z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = mod(i128(x[i]) * n, orders_[i]);
  return z;
}

std::int64_t FiniteQuadraticForm::element_order(const Element& x) const {
  std::int64_t o = 1;
  for (std::size_t i = 0; i < x.size(); ++i) o = std::lcm(o, orders_[i] / std::gcd(orders_[i], x[i]));
  return o;
}

std::vector<Element> FiniteQuadraticForm::elements(std::size_t budget) const {
  if (order() > Int(static_cast<unsigned long>(budget)))
    throw Refusal("group of order " + order().get_str() + " exceeds budget " + std::to_string(budget));
  std::vector<Element> out;
  Element x = zero();
  for (;;) {
    out.push_back(x);
    std::size_t i = x.size();
    while (i > 0) {
      --i;
      if (++x[i] < orders_[i]) break;
      x[i] = 0;
      if (i == 0) return out;
    }
    if (x.empty()) return out;
  }
}

Element DiscriminantForm::to_group(const RatVector& y) const {
  RatVector yg(gram.cols());
  for (std::size_t k = 0; k < y.size(); ++k)
    for (std::size_t j = 0; j < gram.cols(); ++j) yg[j] += y[k] * gram(k, j);
  for (const auto& v : yg)
    if (v.get_den() != 1) throw InvalidInput("vector is not in the dual lattice");
  Element e(form.num_generators());
  for (std::size_t i = 0; i < e.size(); ++i) {
    Rat w = 0;
    for (std::size_t k = 0; k < y.size(); ++k) w += y[k] * coordinate_map(k, i);
    if (w.get_den() != 1) throw InternalError("dual coordinates are not integral");
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), w.get_num_mpz_t(), static_cast<unsigned long>(form.orders()[i]));
    e[i] = r.get_si();
  }
  return e;
}

RatVector DiscriminantForm::lift(const Element& x) const {
  RatVector y(generators.cols());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += Rat(Int(static_cast<long>(x[i]))) * generators(i, j);
  return y;
}

DiscriminantForm discriminant_form(const IntegralLattice& lattice) {
  const IntMatrix& g = lattice.gram();
  const std::size_t n = g.rows();
  const auto s = smith_normal_form(g);
  const IntMatrix p_inv = to_integer(inverse(s.P));
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (s.D(i, i) != 1) idx.push_back(i);

  const std::size_t k = idx.size();
  DiscriminantForm out;
  out.gram = g;
  out.generators = RatMatrix(k, n);
  out.coordinate_map = IntMatrix(n, k);
  std::vector<std::int64_t> orders(k);
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t i = idx[a];
    orders[a] = to_int64(s.D(i, i), "discriminant group order");
    for (std::size_t j = 0; j < n; ++j) {
      out.generators(a, j) = Rat(s.P(i, j), s.D(i, i));
      out.generators(a, j).canonicalize();
      out.coordinate_map(j, a) = p_inv(j, i) * s.D(i, i);
    }
  }
  const RatMatrix gr = to_rational(g);
  const RatMatrix values = out.generators * gr * out.generators.transpose();
  RatVector q(k);
  RatMatrix b(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    q[a] = values(a, a);
    for (std::size_t c = 0; c < k; ++c) b(a, c) = values(a, c);
  }
  out.form = FiniteQuadraticForm(std::move(orders), std::move(q), std::move(b));
  return out;
}

FiniteQuadraticForm negate(const FiniteQuadraticForm& a) {
  RatVector q = a.q_values();
  for (auto& x : q) x = -x;
  RatMatrix b = Rat(-1) * a.b_matrix();
  return FiniteQuadraticForm(a.orders(), std::move(q), std::move(b));
}

std::size_t length(const FiniteQuadraticForm& a) {
  const std::size_t k = a.num_generators();
  IntMatrix d(k, k);
  for (std::size_t i = 0; i < k; ++i) d(i, i) = static_cast<long>(a.orders()[i]);
  std::size_t len = 0;
  for (const auto& e : elementary_divisors(d))
    if (e != 1) ++len;
  return len;
}

FiniteQuadraticForm orthogonal_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  const std::size_t n = a.num_generators(), m = b.num_generators();
  std::vector<std::int64_t> orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  RatVector q = a.q_values();
  q.insert(q.end(), b.q_values().begin(), b.q_values().end());
  RatMatrix bm(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) bm(i, j) = a.b_generator(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) bm(n + i, n + j) = b.b_generator(i, j);
  return FiniteQuadraticForm(std::move(orders), std::move(q), std::move(bm));
}

// ---- subgroups -------------------------------------------------------------

Subgroup make_subgroup(const FiniteQuadraticForm& a, std::vector<Element> generators) {
  const std::size_t k = a.num_generators();
  IntMatrix m(generators.size() + k, k);
  for (std::size_t r = 0; r < generators.size(); ++r) {
    generators[r] = a.reduce(generators[r]);
    for (std::size_t j = 0; j < k; ++j) m(r, j) = static_cast<long>(generators[r][j]);
  }
  for (std::size_t i = 0; i < k; ++i) m(generators.size() + i, i) = static_cast<long>(a.orders()[i]);
  Subgroup h;
  h.hnf = hermite_normal_form(m);
  Int covol = 1;
  for (std::size_t i = 0; i < h.hnf.rows(); ++i) covol *= h.hnf(i, i);
  h.order = a.order() / covol;
  // drop zero generators
  for (auto& g : generators)
    if (std::any_of(g.begin(), g.end(), [](std::int64_t v) { return v != 0; })) h.generators.push_back(g);
  return h;
}

bool contains(const Subgroup& h, const Element& x) {
  const IntMatrix& H = h.hnf;
  IntVector v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = static_cast<long>(x[i]);
  for (std::size_t i = 0; i < H.rows(); ++i) {
    if (!mpz_divisible_p(v[i].get_mpz_t(), H(i, i).get_mpz_t())) return false;
    Int c;
    mpz_divexact(c.get_mpz_t(), v[i].get_mpz_t(), H(i, i).get_mpz_t());
    if (c == 0) continue;
    for (std::size_t j = i; j < v.size(); ++j) v[j] -= c * H(i, j);
  }
  return true;
}

std::vector<Element> subgroup_elements(const FiniteQuadraticForm& a, const Subgroup& h, std::size_t budget) {
  if (h.order > Int(static_cast<unsigned long>(budget)))
    throw Refusal("subgroup of order " + h.order.get_str() + " exceeds budget");
  std::set<Element> seen{a.zero()};
  for (const auto& g : h.generators) {
    std::vector<Element> base(seen.begin(), seen.end());
    const std::int64_t ord = a.element_order(g);
    for (const auto& e : base) {
      Element x = e;
      for (std::int64_t m = 1; m < ord; ++m) {
        x = a.add(x, g);
        seen.insert(x);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

bool is_isotropic(const FiniteQuadraticForm& a, const Subgroup& h) {
  for (std::size_t i = 0; i < h.generators.size(); ++i) {
    if (!a.is_isotropic(h.generators[i])) return false;
    for (std::size_t j = i + 1; j < h.generators.size(); ++j)
      if (!a.orthogonal(h.generators[i], h.generators[j])) return false;
  }
  return true;
}

std::vector<Subgroup> enumerate_isotropic_subgroups(const FiniteQuadraticForm& a, std::size_t budget) {
  std::vector<Element> iso;
  for (auto& x : a.elements(budget))
    if (a.is_isotropic(x) && std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v != 0; }))
      iso.push_back(std::move(x));

  auto key = [](const Subgroup& h) { return h.hnf.data(); };
  std::map<std::vector<Int>, Subgroup> found;
  Subgroup trivial = make_subgroup(a, {});
  found.emplace(key(trivial), trivial);
  std::vector<Subgroup> frontier{trivial};
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& h : frontier) {
      for (const auto& x : iso) {
        if (contains(h, x)) continue;
        bool orth = true;
        for (const auto& g : h.generators)
          if (!a.orthogonal(g, x)) {
            orth = false;
            break;
          }
        if (!orth) continue;
        auto gens = h.generators;
        gens.push_back(x);
        Subgroup bigger = make_subgroup(a, std::move(gens));
        auto [it, inserted] = found.emplace(key(bigger), bigger);
        if (inserted) next.push_back(std::move(bigger));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (auto& [k, h] : found) out.push_back(std::move(h));
  std::sort(out.begin(), out.end(), [](const Subgroup& x, const Subgroup& y) {
    if (x.order != y.order) return x.order < y.order;
    return x.hnf.data() < y.hnf.data();
  });
  return out;
}

Subgroup orthogonal_of_subgroup(const FiniteQuadraticForm& a, const Subgroup& h) {
  const std::size_t k = a.num_generators();
  const std::size_t s = h.generators.size();
  if (s == 0) {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(a.generator(i));
    return make_subgroup(a, std::move(gens));
  }
  // x·C ≡ 0 mod e with C_il = e·b(g_i, h_l)
  const std::int64_t e = a.exponent();
  IntMatrix m(k + s, s);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < s; ++l) m(i, l) = static_cast<long>(a.b_numerator(a.generator(i), h.generators[l]));
  for (std::size_t l = 0; l < s; ++l) m(k + l, l) = static_cast<long>(e);
  const IntMatrix ker = left_kernel(m);
  std::vector<Element> gens;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    Element x(k);
    for (std::size_t i = 0; i < k; ++i) {
      Int v;
      mpz_fdiv_r_ui(v.get_mpz_t(), ker(r, i).get_mpz_t(), static_cast<unsigned long>(a.orders()[i]));
      x[i] = v.get_si();
    }
    gens.push_back(std::move(x));
  }
  return make_subgroup(a, std::move(gens));
}

namespace {

IntMatrix presentation_matrix(const FiniteQuadraticForm& a, const std::vector<Element>& k_gens,
                              const std::vector<Element>& h_gens) {
  const std::size_t r = a.num_generators();
  IntMatrix m(k_gens.size() + h_gens.size() + r, r);
  std::size_t row = 0;
  for (const auto* list : {&k_gens, &h_gens})
    for (const auto& g : *list) {
      for (std::size_t j = 0; j < r; ++j) m(row, j) = static_cast<long>(g[j]);
      ++row;
    }
  for (std::size_t i = 0; i < r; ++i) m(row + i, i) = static_cast<long>(a.orders()[i]);
  return m;
}

}  // namespace

Subquotient subquotient(const FiniteQuadraticForm& a, const std::vector<Element>& k_generators,
                        const std::vector<Element>& h_generators) {
  const std::size_t m = k_generators.size();
  Subquotient out;
  out.k_generators = k_generators;
  out.h_generators = h_generators;
  if (m == 0) {
    out.transform = IntMatrix(0, 0);
    return out;
  }
  // relations among the K generators modulo H and the orders of a
  const IntMatrix ker = left_kernel(presentation_matrix(a, k_generators, h_generators));
  const IntMatrix rel = ker.submatrix(0, 0, ker.rows(), m);
  const auto s = smith_normal_form(rel);
  if (s.rank != m) throw InternalError("subquotient: relation module is not of full rank");
  const IntMatrix q_inv = to_integer(inverse(s.Q));
  out.transform = s.Q;

  std::vector<std::int64_t> orders;
  for (std::size_t i = 0; i < m; ++i) {
    if (s.D(i, i) == 1) continue;
    out.kept.push_back(i);
    orders.push_back(to_int64(s.D(i, i), "subquotient order"));
    Element rep = a.zero();
    for (std::size_t j = 0; j < m; ++j) {
      Int c;
      mpz_fdiv_r_ui(c.get_mpz_t(), q_inv(i, j).get_mpz_t(), static_cast<unsigned long>(a.exponent()));
      rep = a.add(rep, a.scale(k_generators[j], c.get_si()));
    }
    out.representatives.push_back(std::move(rep));
  }
  const std::size_t k = orders.size();
  RatVector q(k);
  RatMatrix b(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    q[i] = a.q(out.representatives[i]);
    for (std::size_t j = 0; j < k; ++j) b(i, j) = a.b(out.representatives[i], out.representatives[j]);
  }
  out.form = FiniteQuadraticForm(std::move(orders), std::move(q), std::move(b));
  return out;
}

Element Subquotient::project(const FiniteQuadraticForm& ambient, const Element& x) const {
  const std::size_t m = k_generators.size();
  Element out(kept.size());
  if (m == 0) return out;
  IntVector target(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) target[i] = static_cast<long>(x[i]);
  auto y = solve_integer_row(presentation_matrix(ambient, k_generators, h_generators), target);
  if (!y) throw InvalidInput("element does not lie in the subgroup being quotiented");
  IntVector c(y->begin(), y->begin() + static_cast<std::ptrdiff_t>(m));
  const IntVector cq = row_times(c, transform);
  for (std::size_t a = 0; a < kept.size(); ++a) {
    Int v;
    mpz_fdiv_r_ui(v.get_mpz_t(), cq[kept[a]].get_mpz_t(), static_cast<unsigned long>(form.orders()[a]));
    out[a] = v.get_si();
  }
  return out;
}

Subquotient quotient_form(const FiniteQuadraticForm& a, const Subgroup& h) {
  if (!is_isotropic(a, h)) throw InvalidInput("subgroup is not isotropic");
  const Subgroup perp = orthogonal_of_subgroup(a, h);
  return subquotient(a, perp.generators, h.generators);
}

Subquotient normalize(const FiniteQuadraticForm& a) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < a.num_generators(); ++i) gens.push_back(a.generator(i));
  return subquotient(a, gens, {});
}

FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  return normalize(orthogonal_sum(a, b)).form;
}

// ---- isometries ------------------------------------------------------------

Element FqfIsometry::apply(const FiniteQuadraticForm& target, const Element& x) const {
  Element y = target.zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) y = target.add(y, target.scale(images[i], x[i]));
  return y;
}

bool FqfIsometry::is_identity(const FiniteQuadraticForm& a) const {
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i] != a.generator(i)) return false;
  return true;
}

IntMatrix FqfIsometry::matrix() const {
  const std::size_t k = images.size();
  const std::size_t c = k ? images.front().size() : 0;
  IntMatrix m(k, c);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(images[i][j]);
  return m;
}

FqfIsometry compose(const FiniteQuadraticForm& a, const FqfIsometry& outer, const FqfIsometry& inner) {
  FqfIsometry out;
  for (const auto& img : inner.images) out.images.push_back(outer.apply(a, img));
  return out;
}

FqfIsometry identity_isometry(const FiniteQuadraticForm& a) {
  FqfIsometry id;
  for (std::size_t i = 0; i < a.num_generators(); ++i) id.images.push_back(a.generator(i));
  return id;
}

namespace {

bool q_equal(const FiniteQuadraticForm& a, const Element& x, const FiniteQuadraticForm& b, const Element& y) {
  return i128(a.q_numerator(x)) * b.exponent() == i128(b.q_numerator(y)) * a.exponent();
}

bool b_equal(const FiniteQuadraticForm& a, const Element& x1, const Element& x2, const FiniteQuadraticForm& b,
             const Element& y1, const Element& y2) {
  return i128(a.b_numerator(x1, x2)) * b.exponent() == i128(b.b_numerator(y1, y2)) * a.exponent();
}

// Backtracking over images of the generators of a inside b.
std::vector<FqfIsometry> search_isometries(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                           std::size_t budget, bool first_only) {
  if (a.order() != b.order()) return {};
  const std::size_t k = a.num_generators();
  const auto elems = b.elements(budget);
  std::vector<std::vector<const Element*>> cand(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Element g = a.generator(i);
    for (const auto& x : elems)
      if (b.element_order(x) == a.orders()[i] && q_equal(a, g, b, x)) cand[i].push_back(&x);
    if (cand[i].empty()) return {};
  }
  std::vector<FqfIsometry> out;
  std::vector<const Element*> chosen(k);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == k) {
      FqfIsometry phi;
      for (auto* c : chosen) phi.images.push_back(*c);
      if (make_subgroup(b, phi.images).order != b.order()) return false;
      out.push_back(std::move(phi));
      return first_only;
    }
    const Element gi = a.generator(i);
    for (auto* x : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = b_equal(a, gi, a.generator(j), b, *x, *chosen[j]);
      if (!ok) continue;
      chosen[i] = x;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool is_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, const FqfIsometry& phi) {
  const std::size_t k = a.num_generators();
  if (phi.images.size() != k || a.order() != b.order()) return false;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& x = phi.images[i];
    if (x.size() != b.num_generators()) return false;
    if (b.scale(x, a.orders()[i]) != b.zero()) return false;
    if (!q_equal(a, a.generator(i), b, x)) return false;
    for (std::size_t j = 0; j < k; ++j)
      if (!b_equal(a, a.generator(i), a.generator(j), b, x, phi.images[j])) return false;
  }
  return make_subgroup(b, phi.images).order == b.order();
}

std::vector<FqfIsometry> isometry_group(const FiniteQuadraticForm& a, std::size_t budget) {
  return search_isometries(a, a, budget, false);
}

std::optional<FqfIsometry> find_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                         std::size_t budget) {
  auto found = search_isometries(a, b, budget, true);
  if (found.empty()) return std::nullopt;
  return found.front();
}

}  // namespace evenlat
