#include "evenlat/planner.hpp"

#include <algorithm>
#include <set>

namespace evenlat {

StabilityReport stability(const IntegralLattice& s) {
  StabilityReport r;
  r.label = s.label();
  r.signature = signature(s);
  r.rank = s.rank();
  r.length = length(discriminant_form(s).form);
  const std::size_t n = r.signature.n_minus;
  r.stable = r.signature.n_plus == 2 && n >= 1 && r.length + 2 <= r.rank;
  r.very_stable = r.stable && n >= 2 && r.length + 3 <= r.rank;
  return r;
}

ComponentConstants component_constants(const StabilityReport& r) {
  ComponentConstants c;
  if (r.very_stable) {
    c = {true, 1, 2, true, "very stable: irreducible, S -> M of degree 2 (cited)"};
  } else if (r.stable) {
    c = {true, 4, 2, false, "stable: at most 4 components, S -> M of degree at most 2 on each (cited)"};
  } else {
    c = {false, 0, 0, false, "not stable: no bound"};
  }
  return c;
}

std::string to_string(Target t) { return t == Target::S ? "S" : "M"; }

int covering_constant(const StabilityReport& r, Target target) {
  const int base = r.length + 5 <= r.rank ? 4 : 16;
  return target == Target::M ? 2 * base : base;
}

CoveringCertificate plan_covering(const IntegralLattice& s, const Int& n, Target target) {
  CoveringCertificate c;
  c.stability = stability(s);
  if (!c.stability.very_stable) throw Refusal("hypothesis fails: S is not very stable");
  if (s.rank() < 5) throw Refusal("hypothesis fails: rank(S) < 5");
  c.components = component_constants(c.stability);
  c.n = n;
  c.target = target;
  const PrimeChoice choice = choose_p(s, n);
  c.p = choice.p;
  c.counts = choice.counts;
  c.bound = choice.bound;
  if (!(c.bound > n)) throw InternalError("certificate bound does not exceed N");
  c.constant = covering_constant(c.stability, target);
  c.constant_reason = c.stability.length + 5 <= c.stability.rank
                          ? "length(A_S) <= rank(S) - 5, so every corank-one T is very stable"
                          : "general very stable S";
  if (target == Target::M) c.constant_reason += "; doubled for the M-quotient";

  std::size_t id = 0;
  for (auto& sub : enumerate_index_p_sublattices(s, c.p)) {
    const auto split = sublattice_disc_split(s, sub);
    const IntegralLattice sp(sub.basis * s.gram() * sub.basis.transpose());
    CertifiedSublattice cs{id++, std::move(sub), split.tag, split.length, stability(sp).very_stable};
    if (!cs.very_stable) throw InternalError("index-p sublattice failed the very-stability re-check");
    c.sublattices.push_back(std::move(cs));
  }
  c.assumptions = {"strong-approximation-index-4", "nikulin-surjectivity-at-stability"};
  return c;
}

std::vector<long> functional_from_sublattice(const IntMatrix& basis, long p) {
  const auto s = smith_normal_form(basis);
  const std::size_t n = basis.rows();
  if (s.rank != n) throw InvalidInput("sublattice basis is not of full rank");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (s.D(i, i) != 1) throw InvalidInput("quotient is not cyclic of order p");
  if (s.D(n - 1, n - 1) != p) throw InvalidInput("quotient is not cyclic of order p");
  // x = y·B  <=>  x·Q = (y·P⁻¹)·D, so the last coordinate of x·Q is ≡ 0
  std::vector<long> alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), s.Q(i, n - 1).get_mpz_t(), static_cast<unsigned long>(p));
    alpha[i] = r.get_si();
  }
  return normalize_line(std::move(alpha), p);
}

std::vector<BrauerPair> sublattice_brauer_bijection(const IntegralLattice& s, long p) {
  std::vector<BrauerPair> out;
  std::set<std::vector<Int>> seen;
  for (const auto& alpha : projective_points(s.rank(), p)) {
    auto sub = index_p_sublattice(s, p, alpha);
    if (!seen.insert(sub.basis.data()).second) throw InternalError("two functionals with the same kernel");
    auto rec = functional_from_sublattice(sub.basis, p);
    out.push_back({std::move(sub), alpha, std::move(rec)});
  }
  return out;
}

namespace {

EdgeBound diagonal_bound(const Embedding& t_in, std::size_t budget) {
  try {
    const auto img = stab_image_in_OK(t_in, budget);
    return {img.degree_bound, "computed", "2 x |image in O(K)| = 2 x " + std::to_string(img.image.size())};
  } catch (const Refusal& r) {
    return {4, "cited", std::string("corank one: degree divides 4; computation refused: ") + r.what()};
  }
}

}  // namespace

TriangleDatum build_triangle(const Embedding& t_in_s, long p, std::size_t budget) {
  const IntegralLattice& s = t_in_s.ambient();
  if (t_in_s.rank() + 1 != s.rank()) throw InvalidInput("T must have corank one in S");
  if (!t_in_s.primitive()) throw InvalidInput("T must be primitive in S");
  const LineClassCount counts = line_classes(s, p);

  TriangleDatum d;
  d.p = p;
  d.f = t_in_s.basis();
  std::vector<IndexPSublattice> admissible;
  for (auto& sub : enumerate_index_p_sublattices(s, p))
    if (integer_coordinates(sub.basis, d.f)) admissible.push_back(std::move(sub));
  d.admissible = admissible.size();
  if (admissible.empty())
    throw Refusal("no index-" + std::to_string(p) + " sublattice contains T");
  // enumeration is ordered by alpha already
  d.s_prime = admissible.front();
  d.pi = d.s_prime.basis;
  d.f_prime = *integer_coordinates(d.pi, d.f);
  d.commutes = d.f_prime * d.pi == d.f;
  if (!d.commutes) throw InternalError("triangle does not commute");

  const IntegralLattice sp(d.pi * s.gram() * d.pi.transpose(), "S'");
  const Embedding t_in_sp(sp, d.f_prime);
  d.saturation_index = saturation_index(t_in_sp);
  d.f_bound = diagonal_bound(t_in_s, budget);
  d.f_prime_bound = t_in_sp.primitive()
                        ? diagonal_bound(t_in_sp, budget)
                        : EdgeBound{4, "cited", "T is not primitive in S'"};
  d.pi_bound = {line_bound(counts), "computed", "certificate bound B(p) from the line classes of S"};
  return d;
}

}  // namespace evenlat
