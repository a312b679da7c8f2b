#include "evenlat/glue.hpp"

#include <numeric>

namespace evenlat {

namespace {

Subgroup projection(const FiniteQuadraticForm& target, const std::vector<Element>& gens, std::size_t offset) {
  std::vector<Element> parts;
  for (const auto& g : gens)
    parts.emplace_back(g.begin() + static_cast<std::ptrdiff_t>(offset),
                       g.begin() + static_cast<std::ptrdiff_t>(offset + target.num_generators()));
  return make_subgroup(target, std::move(parts));
}

}  // namespace

void validate_glue(const GlueMap& glue, bool anti_isometry) {
  const auto sum = glue.sum();
  for (const auto& g : glue.graph)
    if (g.size() != sum.num_generators())
      throw InvalidInput("glue generator has " + std::to_string(g.size()) + " coordinates, expected " +
                         std::to_string(sum.num_generators()));
  const Subgroup h = make_subgroup(sum, glue.graph);
  if (!is_isotropic(sum, h)) throw InvalidInput("glue subgroup is not isotropic");
  if (!anti_isometry) return;
  if (glue.left.order() != glue.right.order())
    throw InvalidInput("glue factors have different orders " + glue.left.order().get_str() + " and " +
                       glue.right.order().get_str());
  const Subgroup pl = projection(glue.left, h.generators, 0);
  const Subgroup pr = projection(glue.right, h.generators, glue.left.num_generators());
  if (h.order != glue.left.order() || pl.order != glue.left.order() || pr.order != glue.right.order())
    throw InvalidInput("glue subgroup is not the graph of a bijection");
}

std::optional<GlueMap> find_anti_isometry(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                          std::size_t budget) {
  auto phi = find_isometry(a, negate(b), budget);
  if (!phi) return std::nullopt;
  GlueMap glue{a, b, {}};
  for (std::size_t i = 0; i < a.num_generators(); ++i) {
    Element g = a.generator(i);
    g.insert(g.end(), phi->images[i].begin(), phi->images[i].end());
    glue.graph.push_back(std::move(g));
  }
  return glue;
}

Overlattice overlattice_from_lifts(const IntMatrix& gram, const RatMatrix& lifts) {
  const std::size_t n = gram.rows();
  if (lifts.rows() > 0 && lifts.cols() != n) throw InvalidInput("lift dimension mismatch");
  Int den = 1;
  for (const auto& x : lifts.data()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  IntMatrix stacked(n + lifts.rows(), n);
  for (std::size_t i = 0; i < n; ++i) stacked(i, i) = den;
  for (std::size_t i = 0; i < lifts.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rat v = lifts(i, j) * Rat(den);
      stacked(n + i, j) = v.get_num();
    }
  const IntMatrix h = hermite_normal_form(stacked);
  RatMatrix basis = to_rational(h);
  for (auto i = 0u; i < n; ++i)
    for (auto j = 0u; j < n; ++j) {
      basis(i, j) /= Rat(den);
      basis(i, j).canonicalize();
    }
  const RatMatrix g = basis * to_rational(gram) * basis.transpose();
  if (!is_integral(g)) throw InvalidInput("overlattice is not integral");
  IntegralLattice m(to_integer(g));
  Embedding inc(m, to_integer(inverse(basis)));
  return {m, basis, inc};
}

Overlattice overlattice(const IntegralLattice& lattice, const Subgroup& h) {
  const auto d = discriminant_form(lattice);
  if (!is_isotropic(d.form, h)) throw InvalidInput("subgroup is not isotropic");
  RatMatrix lifts(h.generators.size(), lattice.rank());
  for (std::size_t i = 0; i < h.generators.size(); ++i) {
    const RatVector y = d.lift(h.generators[i]);
    for (std::size_t j = 0; j < y.size(); ++j) lifts(i, j) = y[j];
  }
  auto out = overlattice_from_lifts(lattice.gram(), lifts);
  if (!lattice.label().empty()) out.lattice = out.lattice.relabeled(lattice.label() + "/H");
  return out;
}

K3Gluing glue_to_k3(const IntegralLattice& l, const IntegralLattice& t, const GlueMap& glue) {
  const Signature sl = signature(l), st = signature(t);
  if (l.rank() + t.rank() != 22)
    throw InvalidInput("ranks " + std::to_string(l.rank()) + " + " + std::to_string(t.rank()) + " do not sum to 22");
  if (sl.n_plus != 1) throw InvalidInput("hyperbolic lattice must have signature (1, rank-1)");
  if (st.n_plus != 2) throw InvalidInput("transcendental lattice must have signature (2, rank-2)");

  const auto dl = discriminant_form(l);
  const auto dt = discriminant_form(t);
  if (!(glue.left == dt.form)) throw InvalidInput("glue left form differs from the discriminant form of T");
  if (!(glue.right == dl.form)) throw InvalidInput("glue right form differs from the discriminant form of L");
  validate_glue(glue, true);

  // ambient order is L ⊕ T
  const IntegralLattice sum = direct_sum(l, t);
  const std::size_t nl = l.rank(), nt = t.rank(), kt = dt.form.num_generators();
  RatMatrix lifts(glue.graph.size(), nl + nt);
  for (std::size_t r = 0; r < glue.graph.size(); ++r) {
    const Element& g = glue.graph[r];
    const RatVector yt = dt.lift(Element(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(kt)));
    const RatVector yl = dl.lift(Element(g.begin() + static_cast<std::ptrdiff_t>(kt), g.end()));
    for (std::size_t j = 0; j < nl; ++j) lifts(r, j) = yl[j];
    for (std::size_t j = 0; j < nt; ++j) lifts(r, nl + j) = yt[j];
  }
  Overlattice m = overlattice_from_lifts(sum.gram(), lifts);
  m.lattice = m.lattice.relabeled("K3");
  if (abs(m.lattice.det()) != 1) throw InternalError("glued lattice is not unimodular");
  if (!(signature(m.lattice) == Signature{3, 19})) throw InternalError("glued lattice has wrong signature");

  const IntMatrix& coords = m.inclusion.basis();
  Embedding el(m.lattice, coords.select_rows(0, nl));
  Embedding et(m.lattice, coords.select_rows(nl, nt));
  if (!el.primitive() || !et.primitive()) throw InternalError("glued summands are not primitive");
  return {m, el, et};
}

CriterionResult check_unique_embedding(const IntegralLattice& l) {
  const Signature s = signature(l);
  if (s.n_plus != 1) throw InvalidInput("criterion needs a hyperbolic lattice, signature (1, rank-1)");
  if (l.rank() > 20) throw InvalidInput("criterion needs rank at most 20");
  const std::size_t len = length(discriminant_form(l).form);
  const std::size_t room = 20 - l.rank();
  if (len <= room)
    return {true, "criterion satisfied: length " + std::to_string(len) + " <= 20 - rank = " + std::to_string(room)};
  return {false, "criterion inconclusive: length " + std::to_string(len) + " > 20 - rank = " + std::to_string(room)};
}

CriterionResult check_unique_in_genus(const IntegralLattice& s) {
  if (signature(s).is_definite()) throw InvalidInput("criterion needs an indefinite lattice");
  const std::size_t len = length(discriminant_form(s).form);
  if (s.rank() >= 2 && len <= s.rank() - 2)
    return {true, "criterion satisfied: length " + std::to_string(len) + " <= rank - 2 = " +
                      std::to_string(s.rank() - 2)};
  return {false, "criterion inconclusive: length " + std::to_string(len) + " > rank - 2"};
}

}  // namespace evenlat
