#include "evenlat/modp.hpp"

#include <algorithm>
#include <map>

namespace evenlat {

namespace {

long mod_p(const Int& x, long p) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
  return r.get_si();
}

long inv_mod(long a, long p) {
  Int r, aa(a), pp(p);
  mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), pp.get_mpz_t());
  return r.get_si();
}

void require_odd_prime(long p) {
  if (p < 3 || !is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not an odd prime");
}

void require_coprime(const IntegralLattice& s, long p) {
  if (mpz_divisible_ui_p(s.det().get_mpz_t(), static_cast<unsigned long>(p)))
    throw InvalidInput("p = " + std::to_string(p) + " divides det = " + s.det().get_str());
}

std::vector<long> gram_mod(const IntegralLattice& s, long p) {
  std::vector<long> g;
  for (const auto& x : s.gram().data()) g.push_back(mod_p(x, p));
  return g;
}

long form_mod(const std::vector<long>& g, const std::vector<long>& x, long p) {
  const std::size_t n = x.size();
  long acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    long row = 0;
    for (std::size_t j = 0; j < n; ++j) row = (row + g[i * n + j] * x[j]) % p;
    acc = (acc + x[i] * row) % p;
  }
  return acc;
}


}  // namespace

std::vector<long> normalize_line(std::vector<long> v, long p) {
  for (auto& x : v) x = ((x % p) + p) % p;
  auto nz = std::find_if(v.begin(), v.end(), [](long e) { return e != 0; });
  if (nz == v.end()) throw InvalidInput("zero vector does not define a line");
  const long inv = inv_mod(*nz, p);
  for (auto& x : v) x = x * inv % p;
  return v;
}

bool is_prime(long p) {
  if (p < 2) return false;
  Int x(p);
  return mpz_probab_prime_p(x.get_mpz_t(), 30) != 0;
}

long valuation(const Int& x, long p) {
  if (x == 0) throw InvalidInput("valuation of zero");
  Int u = x;
  long v = 0;
  while (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

int legendre(const Int& a, long p) {
  Int pp(p);
  return mpz_legendre(a.get_mpz_t(), pp.get_mpz_t());
}

std::vector<std::vector<long>> projective_points(std::size_t n, long p, std::size_t limit) {
  Int total;
  mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(p), n);
  total = (total - 1) / (p - 1);
  if (total > Int(static_cast<unsigned long>(limit)))
    throw Refusal("F_" + std::to_string(p) + "^" + std::to_string(n) + " has " + total.get_str() +
                  " lines, above the limit " + std::to_string(limit));
  std::vector<std::vector<long>> out;
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::vector<long> v(n, 0);
    v[lead] = 1;
    for (;;) {
      out.push_back(v);
      std::size_t i = n;
      while (i > lead + 1 && v[i - 1] == p - 1) v[--i] = 0;
      if (i == lead + 1) break;
      ++v[i - 1];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LineClassCount line_classes(const IntegralLattice& s, long p) {
  require_odd_prime(p);
  require_coprime(s, p);
  const auto g = gram_mod(s, p);
  LineClassCount c;
  c.p = p;
  for (const auto& x : projective_points(s.rank(), p)) {
    const long v = form_mod(g, x, p);
    if (v == 0)
      ++c.isotropic;
    else if (legendre(Int(v), p) == 1)
      ++c.square;
    else
      ++c.nonsquare;
  }
  return c;
}

IndexPSublattice index_p_sublattice(const IntegralLattice& s, long p, const std::vector<long>& alpha) {
  if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
  const std::size_t n = s.rank();
  if (alpha.size() != n) throw InvalidInput("functional has the wrong dimension");
  IndexPSublattice out;
  out.p = p;
  out.alpha = normalize_line(alpha, p);
  const std::size_t j = static_cast<std::size_t>(
      std::find_if(out.alpha.begin(), out.alpha.end(), [](long e) { return e != 0; }) - out.alpha.begin());
  IntMatrix b(n, n);
  for (std::size_t i = 0, r = 0; i < n; ++i) {
    if (i == j) continue;
    b(r, i) = 1;
    b(r, j) = -out.alpha[i];
    ++r;
  }
  b(n - 1, j) = p;
  out.basis = hermite_normal_form(b);

  if (!mpz_divisible_ui_p(s.det().get_mpz_t(), static_cast<unsigned long>(p))) {
    // (x, v) = x·G·vᵀ ≡ alpha·x  <=>  v = alpha·G⁻¹
    const RatMatrix inv = inverse(s.gram());
    std::vector<long> v(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      long acc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const Rat& e = inv(k, c);
        const long num = mod_p(e.get_num(), p), den = mod_p(e.get_den(), p);
        acc = (acc + out.alpha[k] * (num * inv_mod(den, p) % p)) % p;
      }
      v[c] = acc;
    }
    out.dual_line = normalize_line(v, p);
  }
  return out;
}

std::vector<IndexPSublattice> enumerate_index_p_sublattices(const IntegralLattice& s, long p) {
  if (!is_prime(p)) throw InvalidInput("p = " + std::to_string(p) + " is not prime");
  std::vector<IndexPSublattice> out;
  for (const auto& alpha : projective_points(s.rank(), p)) out.push_back(index_p_sublattice(s, p, alpha));
  return out;
}

std::string to_string(PPart tag) { return tag == PPart::Elementary ? "(Z/p)^2" : "Z/p^2"; }

DiscSplit sublattice_disc_split(const IntegralLattice& s, const IndexPSublattice& sub, std::size_t budget) {
  const long p = sub.p;
  require_odd_prime(p);
  require_coprime(s, p);
  const IntegralLattice sp(sub.basis * s.gram() * sub.basis.transpose());
  const auto d = discriminant_form(sp);
  DiscSplit out;
  out.form = d.form;
  out.det = sp.det();
  out.length = length(d.form);

  std::vector<long> p_vals;
  for (auto o : d.form.orders())
    if (o % p == 0) p_vals.push_back(valuation(Int(static_cast<long>(o)), p));
  if (p_vals == std::vector<long>{1, 1})
    out.tag = PPart::Elementary;
  else if (p_vals == std::vector<long>{2})
    out.tag = PPart::Cyclic;
  else
    throw InternalError("index-p sublattice with an unexpected p-part");

  if (!sub.dual_line) throw InternalError("missing dual line");
  const long qv = form_mod(gram_mod(s, p), *sub.dual_line, p);
  out.predicted = qv == 0 ? PPart::Elementary : PPart::Cyclic;

  // p² kills the p-part and is invertible on the rest
  std::vector<Element> gens;
  for (std::size_t i = 0; i < d.form.num_generators(); ++i) gens.push_back(d.form.scale(d.form.generator(i), p * p));
  const auto rest = subquotient(d.form, gens, {}).form;
  const auto as = discriminant_form(s).form;
  if (as.order() <= Int(static_cast<unsigned long>(budget)))
    out.prime_to_p_matches = find_isometry(rest, as, budget).has_value();
  return out;
}

Int line_bound(const LineClassCount& c) {
  std::optional<Int> m;
  for (const Int* x : {&c.isotropic, &c.square, &c.nonsquare})
    if (*x > 0 && (!m || *x < *m)) m = *x;
  if (!m) throw Refusal("no nonempty line class");
  Int b;
  mpz_cdiv_q_ui(b.get_mpz_t(), m->get_mpz_t(), 4);
  return b;
}

PrimeChoice choose_p(const IntegralLattice& s, const Int& n) {
  if (s.rank() < 3) throw Refusal("choose_p needs rank at least 3");
  if (is_definite(s)) throw Refusal("choose_p needs an indefinite lattice");
  for (long p = 3;; p += 2) {
    if (!is_prime(p) || mpz_divisible_ui_p(s.det().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    PrimeChoice c{p, line_classes(s, p), 0};
    c.bound = line_bound(c.counts);
    if (c.bound > n) return c;
  }
}

JordanDecomposition jordan_decompose(const IntegralLattice& l, long p, std::optional<long> precision) {
  require_odd_prime(p);
  const long vdet = valuation(l.det(), p);
  JordanDecomposition out;
  out.p = p;
  out.precision = precision.value_or(vdet + 2);
  if (out.precision < 1) throw InvalidInput("precision must be positive");
  Int modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(out.precision));
  auto reduce = [&](Int& x) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t()); };
  auto val = [&](const Int& x) { return x == 0 ? out.precision : valuation(x, p); };

  IntMatrix a = l.gram();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) reduce(a(i, j));
  std::vector<std::size_t> alive(a.rows());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;

  std::map<long, std::pair<std::size_t, Int>> by_scale;
  auto refuse = [&] {
    throw Refusal("Jordan decomposition at p = " + std::to_string(p) + " needs precision at least " +
                  std::to_string(vdet + 1) + ", got " + std::to_string(out.precision));
  };
  while (!alive.empty()) {
    long best = out.precision;
    for (std::size_t x = 0; x < alive.size(); ++x)
      for (std::size_t y = x; y < alive.size(); ++y) best = std::min(best, val(a(alive[x], alive[y])));
    if (best >= out.precision) refuse();
    std::size_t bi = alive.size(), bj = 0;
    bool diag = false;
    for (std::size_t x = 0; x < alive.size() && !diag; ++x)
      if (val(a(alive[x], alive[x])) == best) {
        bi = x;
        diag = true;
      }
    for (std::size_t x = 0; x < alive.size() && bi == alive.size(); ++x)
      for (std::size_t y = x + 1; y < alive.size(); ++y)
        if (val(a(alive[x], alive[y])) == best) {
          bi = x;
          bj = y;
          break;
        }
    if (!diag) {
      // e_i += e_j makes the diagonal entry of minimal valuation
      const std::size_t i = alive[bi], j = alive[bj];
      a.add_row_multiple(i, j, Int(1));
      a.add_col_multiple(i, j, Int(1));
      for (std::size_t c = 0; c < a.cols(); ++c) {
        reduce(a(i, c));
        reduce(a(c, i));
      }
      if (val(a(i, i)) != best) throw InternalError("Jordan pivot repair failed");
    }
    const std::size_t i = alive[bi];
    Int pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(best));
    Int u;
    mpz_divexact(u.get_mpz_t(), a(i, i).get_mpz_t(), pv.get_mpz_t());
    Int u_inv;
    mpz_invert(u_inv.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t());
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(bi));
    for (std::size_t x : alive) {
      Int ax;
      mpz_divexact(ax.get_mpz_t(), a(x, i).get_mpz_t(), pv.get_mpz_t());
      for (std::size_t y : alive) {
        a(x, y) -= ax * a(i, y) * u_inv;
        reduce(a(x, y));
      }
    }
    auto& slot = by_scale[best];
    if (slot.first == 0) slot.second = 1;
    ++slot.first;
    slot.second *= u;
    mpz_fdiv_r_ui(slot.second.get_mpz_t(), slot.second.get_mpz_t(), static_cast<unsigned long>(p));
  }

  long total = 0;
  for (const auto& [k, rd] : by_scale) {
    out.blocks.push_back({k, rd.first, legendre(rd.second, p)});
    total += k * static_cast<long>(rd.first);
  }
  if (total != vdet) refuse();
  return out;
}

UnitNormVector find_unit_norm_vector(const IntegralLattice& l, long p) {
  const auto jd = jordan_decompose(l, p);
  if (jd.blocks.empty() || jd.blocks.front().scale != 0)
    throw Refusal("L tensor Z_" + std::to_string(p) + " has no unimodular Jordan component");
  const std::size_t n = l.rank();
  const RatMatrix g = to_rational(l.gram());

  auto build = [&](const IntVector& x) {
    UnitNormVector u;
    u.x = x;
    u.norm = l.norm(x);
    const IntVector gx = row_times(x, l.gram());
    u.reflection = RatMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        u.reflection(i, j) -= Rat(2 * gx[i] * x[j], u.norm);
        u.reflection(i, j).canonicalize();
      }
    if (!(u.reflection * g * u.reflection.transpose() == g)) throw InternalError("reflection is not an isometry");
    for (const auto& e : u.reflection.data())
      if (mpz_divisible_ui_p(e.get_den_mpz_t(), static_cast<unsigned long>(p)))
        throw InternalError("reflection is not p-integral");
    u.integral = is_integral(u.reflection);
    return u;
  };

  std::vector<IntVector> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    candidates.push_back(e);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (int s : {1, -1}) {
        IntVector e(n);
        e[i] = 1;
        e[j] = s;
        candidates.push_back(e);
      }
  std::optional<UnitNormVector> fallback;
  for (const auto& x : candidates) {
    const Int nx = l.norm(x);
    if (nx == 0 || mpz_divisible_ui_p(nx.get_mpz_t(), static_cast<unsigned long>(p))) continue;
    auto u = build(x);
    if (u.integral) return u;
    if (!fallback) fallback = std::move(u);
  }
  if (fallback) return *fallback;
  throw InternalError("no unit-norm vector among e_i and e_i ± e_j despite a unimodular component");
}

}  // namespace evenlat
