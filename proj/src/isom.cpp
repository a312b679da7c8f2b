#include "evenlat/isom.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace evenlat {

namespace {

RatVector row_of(const RatMatrix& m, std::size_t i) { return m.row_vector(i); }

Element concat(Element a, const Element& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Int gl_order_f3(std::size_t n) {
  Int three_n, out = 1;
  mpz_ui_pow_ui(three_n.get_mpz_t(), 3, n);
  for (std::size_t i = 0; i < n; ++i) {
    Int three_i;
    mpz_ui_pow_ui(three_i.get_mpz_t(), 3, i);
    out *= three_n - three_i;
  }
  return out;
}

std::vector<Int> mod3_key(const IntMatrix& m) {
  std::vector<Int> k;
  for (const auto& x : m.data()) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), 3);
    k.push_back(r);
  }
  return k;
}

}  // namespace

FqfIsometry induced_action(const DiscriminantForm& d, const IntMatrix& g) {
  const RatMatrix gr = to_rational(g);
  FqfIsometry phi;
  for (std::size_t i = 0; i < d.form.num_generators(); ++i)
    phi.images.push_back(d.to_group(row_times(row_of(d.generators, i), gr)));
  return phi;
}

bool is_stable(const IntMatrix& g, const IntegralLattice& lattice) {
  const auto d = discriminant_form(lattice);
  return induced_action(d, g).is_identity(d.form);
}

Isometry::Isometry(const IntegralLattice& lattice, IntMatrix g)
    : Isometry(lattice, std::move(g), discriminant_form(lattice)) {}

Isometry::Isometry(const IntegralLattice& lattice, IntMatrix g, const DiscriminantForm& disc)
    : matrix_(std::move(g)) {
  const std::size_t n = lattice.rank();
  if (matrix_.rows() != n || matrix_.cols() != n) throw InvalidInput("isometry has the wrong size");
  if (!(matrix_ * lattice.gram() * matrix_.transpose() == lattice.gram()))
    throw InvalidInput("matrix does not preserve the Gram matrix");
  const Int d = determinant(matrix_);
  if (d != 1 && d != -1) throw InternalError("isometry with determinant other than ±1");
  det_ = d == 1 ? 1 : -1;
  stable_ = induced_action(disc, matrix_).is_identity(disc.form);
}

std::vector<IntVector> short_vectors(const IntegralLattice& lattice, const Int& bound) {
  const Signature sig = signature(lattice);
  if (!sig.is_definite()) throw InvalidInput("short vectors need a definite lattice");
  const std::size_t n = lattice.rank();
  const int sign = sig.n_minus > 0 ? -1 : 1;
  const IntMatrix pos = Int(sign) * lattice.gram();
  if (bound < 0) return {};

  // Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²
  RatMatrix q = to_rational(pos);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q(k, l) -= q(k, i) * q(i, l);
  }

  std::vector<IntVector> found;
  IntVector x(n);
  auto rec = [&](auto&& self, std::size_t i, const Rat& remaining) -> void {
    Rat c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c += q(i, j) * Rat(x[j]);
    const Rat t = remaining / q(i, i);
    Int fl_t;
    mpz_fdiv_q(fl_t.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    Int s = sqrt(fl_t) + 1;
    Rat neg_c = -c;
    Int lo, hi;
    mpz_fdiv_q(lo.get_mpz_t(), neg_c.get_num_mpz_t(), neg_c.get_den_mpz_t());
    mpz_cdiv_q(hi.get_mpz_t(), neg_c.get_num_mpz_t(), neg_c.get_den_mpz_t());
    lo -= s;
    hi += s;
    for (Int v = lo; v <= hi; ++v) {
      Rat dv = Rat(v) + c;
      Rat used = q(i, i) * dv * dv;
      if (used > remaining) continue;
      x[i] = v;
      if (i == 0) {
        if (std::any_of(x.begin(), x.end(), [](const Int& e) { return e != 0; })) found.push_back(x);
      } else {
        self(self, i - 1, remaining - used);
      }
    }
    x[i] = 0;
  };
  rec(rec, n - 1, Rat(bound));

  std::vector<std::pair<Int, IntVector>> keyed;
  for (auto& v : found) {
    auto nz = std::find_if(v.begin(), v.end(), [](const Int& e) { return e != 0; });
    if (*nz < 0) continue;
    keyed.emplace_back(abs(lattice.norm(v)), std::move(v));
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<IntVector> out;
  for (auto& [k, v] : keyed) out.push_back(std::move(v));
  return out;
}

std::vector<IntVector> roots(const IntegralLattice& lattice) {
  std::vector<IntVector> out;
  if (signature(lattice).n_minus == 0) return out;
  for (auto& v : short_vectors(lattice, 2))
    if (lattice.norm(v) == -2) out.push_back(std::move(v));
  return out;
}

std::vector<Isometry> automorphism_group(const IntegralLattice& k, std::size_t budget) {
  if (!is_definite(k)) throw InvalidInput("automorphism group needs a definite lattice");
  const std::size_t n = k.rank();
  const IntMatrix& g = k.gram();
  Int max_norm = 0;
  for (std::size_t i = 0; i < n; ++i) max_norm = std::max(max_norm, Int(abs(g(i, i))));

  std::vector<IntVector> pool;
  for (auto& v : short_vectors(k, max_norm)) {
    IntVector neg(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) neg[j] = -v[j];
    pool.push_back(std::move(v));
    pool.push_back(std::move(neg));
  }
  if (pool.size() > budget) throw Refusal("automorphism search: " + std::to_string(pool.size()) +
                                          " candidate vectors exceed budget " + std::to_string(budget));
  std::vector<IntVector> pool_g;
  for (const auto& v : pool) pool_g.push_back(row_times(v, g));

  std::vector<std::vector<std::size_t>> cand(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < pool.size(); ++c)
      if (k.norm(pool[c]) == g(i, i)) cand[i].push_back(c);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cand[a].size() < cand[b].size(); });

  auto dot = [](const IntVector& a, const IntVector& b) {
    Int acc = 0;
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * b[j];
    return acc;
  };

  const auto disc = discriminant_form(k);
  std::vector<std::size_t> chosen(n);
  std::vector<Isometry> out;
  std::size_t nodes = 0;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == n) {
      IntMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = pool[chosen[i]][j];
      out.emplace_back(k, std::move(m), disc);
      return;
    }
    const std::size_t i = order[depth];
    for (std::size_t c : cand[i]) {
      if (++nodes > budget)
        throw Refusal("automorphism search exceeded budget of " + std::to_string(budget) + " nodes");
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) {
        const std::size_t j = order[d];
        ok = dot(pool_g[c], pool[chosen[j]]) == g(i, j);
      }
      if (!ok) continue;
      chosen[i] = c;
      self(self, depth + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

GroupReport group_report(const IntegralLattice& k, const std::vector<Isometry>& group) {
  GroupReport r;
  r.order = group.size();
  std::set<std::vector<Int>> elems;
  for (const auto& g : group) elems.insert(g.matrix().data());

  auto generated = [&](const std::vector<Isometry>& gens) {
    std::set<std::vector<Int>> seen;
    std::vector<IntMatrix> frontier{IntMatrix::identity(k.rank())};
    seen.insert(frontier.front().data());
    while (!frontier.empty()) {
      std::vector<IntMatrix> next;
      for (const auto& a : frontier)
        for (const auto& g : gens) {
          IntMatrix p = a * g.matrix();
          if (seen.insert(p.data()).second) next.push_back(std::move(p));
        }
      frontier = std::move(next);
    }
    return seen;
  };
  std::set<std::vector<Int>> span{IntMatrix::identity(k.rank()).data()};
  for (const auto& g : group) {
    if (span.count(g.matrix().data())) continue;
    r.generators.push_back(g);
    span = generated(r.generators);
  }

  r.closed = span == elems;
  if (r.closed) {
    const RatMatrix gram = to_rational(k.gram());
    const RatMatrix gram_inv = inverse(gram);
    for (const auto& g : group) {
      // g⁻¹ = G·gᵀ·G⁻¹
      RatMatrix inv = gram * to_rational(g.matrix()).transpose() * gram_inv;
      if (!is_integral(inv) || !elems.count(to_integer(inv).data())) r.closed = false;
    }
    if (group.size() * group.size() <= 250000)
      for (const auto& a : group)
        for (const auto& b : group)
          if (!elems.count((a.matrix() * b.matrix()).data())) r.closed = false;
  }

  std::set<std::vector<Int>> reduced;
  for (const auto& g : group) {
    reduced.insert(mod3_key(g.matrix()));
    if (g.stable()) ++r.stable_order;
  }
  r.injective_mod3 = reduced.size() == group.size();
  r.divides_gl3 = group.empty() ? false
                                : mpz_divisible_ui_p(gl_order_f3(k.rank()).get_mpz_t(), group.size()) != 0;
  r.stable_index = r.stable_order ? group.size() / r.stable_order : 0;
  return r;
}

Isometry reflection(const IntegralLattice& lattice, const IntVector& delta) {
  if (delta.size() != lattice.rank()) throw InvalidInput("root has the wrong dimension");
  if (lattice.norm(delta) != -2) throw InvalidInput("vector is not a root: norm " + lattice.norm(delta).get_str());
  const std::size_t n = lattice.rank();
  const IntVector gd = row_times(delta, lattice.gram());  // (e_i, δ)
  IntMatrix r = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) += gd[i] * delta[j];
  return Isometry(lattice, std::move(r));
}

Isometry extend_by_identity(const Isometry& g, const Embedding& e) {
  if (abs(e.ambient().det()) != 1) throw InvalidInput("extension by identity needs a unimodular ambient");
  if (!e.primitive()) throw InvalidInput("extension by identity needs a primitive embedding");
  const IntegralLattice sub = e.sublattice();
  Isometry on_sub(sub, g.matrix());
  if (!on_sub.stable()) throw InvalidInput("isometry is not stable, so it does not extend by the identity");
  const IntMatrix& b = e.basis();
  const IntMatrix c = orthogonal_complement(e).basis();
  const std::size_t n = e.ambient().rank(), k = b.rows();
  IntMatrix w(n, n), target(n, n);
  const IntMatrix gb = g.matrix() * b;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      w(i, j) = b(i, j);
      target(i, j) = gb(i, j);
    }
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      w(k + i, j) = c(i, j);
      target(k + i, j) = c(i, j);
    }
  const RatMatrix f = inverse(w) * to_rational(target);
  if (!is_integral(f)) throw InternalError("extension of a stable isometry is not integral");
  return Isometry(e.ambient(), to_integer(f));
}

IntMatrix restrict_to(const IntMatrix& f, const Embedding& e) {
  auto coords = integer_coordinates(e.basis(), e.basis() * f);
  if (!coords) throw InvalidInput("isometry does not preserve the sublattice");
  return *coords;
}

StabImage stab_image_in_OK(const Embedding& t_in_s, std::size_t budget) {
  if (!t_in_s.primitive()) throw InvalidInput("T must be primitive in S");
  const IntegralLattice& s = t_in_s.ambient();
  const IntMatrix& b = t_in_s.basis();
  const IntegralLattice t = t_in_s.sublattice("T");
  const Embedding k_in_s = orthogonal_complement(t_in_s);
  const IntegralLattice k = k_in_s.sublattice("K");
  const IntMatrix& c = k_in_s.basis();

  if (!is_definite(k)) throw Refusal("hypothesis fails: the complement K is not definite");
  if (is_definite(t)) throw Refusal("hypothesis fails: T is definite");
  const auto dt = discriminant_form(t);
  const std::size_t lt = length(dt.form);
  if (t.rank() < 2 || lt > t.rank() - 2)
    throw Refusal("hypothesis fails: length(A_T) = " + std::to_string(lt) + " > rank(T) - 2");
  const auto dk = discriminant_form(k);
  const Int ubudget(static_cast<unsigned long>(budget));
  if (dt.form.order() > ubudget || dk.form.order() > ubudget)
    throw Refusal("discriminant groups exceed budget " + std::to_string(budget));

  // glue H: image of S in A_T ⊕ A_K
  const FiniteQuadraticForm sum = orthogonal_sum(dt.form, dk.form);
  const RatMatrix gs = to_rational(s.gram());
  const RatMatrix yt = gs * to_rational(b).transpose() * inverse(t.gram());
  const RatMatrix yk = gs * to_rational(c).transpose() * inverse(k.gram());
  std::vector<Element> hgens;
  for (std::size_t i = 0; i < s.rank(); ++i)
    hgens.push_back(concat(dt.to_group(yt.row_vector(i)), dk.to_group(yk.row_vector(i))));
  const Subgroup h = make_subgroup(sum, hgens);
  const Subgroup perp = orthogonal_of_subgroup(sum, h);

  StabImage out;
  out.glue_order = h.order;
  const auto ok = automorphism_group(k, budget);
  out.ok_order = ok.size();
  const auto oat = isometry_group(dt.form, budget);
  const std::size_t nt = dt.form.num_generators(), nk = dk.form.num_generators();

  for (const auto& hk : ok) {
    const FqfIsometry hbar = induced_action(dk, hk.matrix());
    bool found = false;
    for (const auto& phi : oat) {
      FqfIsometry psi;
      for (std::size_t i = 0; i < nt; ++i) psi.images.push_back(concat(phi.images[i], Element(nk, 0)));
      for (std::size_t i = 0; i < nk; ++i) psi.images.push_back(concat(Element(nt, 0), hbar.images[i]));
      bool good = true;
      for (const auto& x : h.generators)
        if (!contains(h, psi.apply(sum, x))) {
          good = false;
          break;
        }
      if (!good) continue;
      for (const auto& y : perp.generators)
        if (!contains(h, sum.add(psi.apply(sum, y), sum.scale(y, -1)))) {
          good = false;
          break;
        }
      if (good) {
        found = true;
        break;
      }
    }
    if (found) out.image.push_back(hk);
  }
  out.degree_bound = Int(2) * Int(static_cast<unsigned long>(out.image.size()));
  out.assumptions = {"O(T) -> O(A_T) is surjective (T indefinite with length(A_T) <= rank(T) - 2)",
                     "the kernel of Stab(T,S)* -> O(K) is O(T)*",
                     "bound = 2 x |image|, the factor 2 accounting for -Id"};
  return out;
}

}  // namespace evenlat
