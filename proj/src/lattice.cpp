#include "evenlat/lattice.hpp"

#include <cctype>
#include <map>

namespace evenlat {

IntegralLattice::IntegralLattice(IntMatrix gram, std::string label)
    : gram_(std::move(gram)), label_(std::move(label)) {
  if (gram_.rows() == 0) throw InvalidInput("lattice of rank zero");
  if (!gram_.is_symmetric()) throw InvalidInput("Gram matrix is not symmetric");
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    if (!mpz_even_p(gram_(i, i).get_mpz_t()))
      throw InvalidInput("Gram matrix has odd diagonal entry at " + std::to_string(i) +
                         " (lattice is not even)");
  det_ = determinant(gram_);
  if (det_ == 0) throw InvalidInput("Gram matrix is degenerate");
}

IntegralLattice IntegralLattice::relabeled(std::string label) const {
  IntegralLattice copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

Embedding::Embedding(IntegralLattice ambient, IntMatrix basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {
  if (basis_.cols() != ambient_.rank())
    throw InvalidInput("embedding basis has " + std::to_string(basis_.cols()) +
                       " columns, ambient rank is " + std::to_string(ambient_.rank()));
  if (basis_.rows() == 0 || evenlat::rank(basis_) != basis_.rows())
    throw InvalidInput("embedding basis does not have full row rank");
  const IntMatrix induced = basis_ * ambient_.gram() * basis_.transpose();
  for (std::size_t i = 0; i < induced.rows(); ++i)
    if (!mpz_even_p(induced(i, i).get_mpz_t())) throw InvalidInput("induced Gram is not even");
  // primitive iff all elementary divisors of the coordinate matrix are 1
  primitive_ = true;
  for (const auto& d : elementary_divisors(basis_))
    if (d != 1) primitive_ = false;
}

IntegralLattice Embedding::sublattice(std::string label) const {
  return IntegralLattice(basis_ * ambient_.gram() * basis_.transpose(), std::move(label));
}

Signature signature(const IntegralLattice& lattice) {
  // Symmetric elimination over Q: congruence transforms preserve inertia.
  RatMatrix A = to_rational(lattice.gram());
  const std::size_t n = A.rows();
  Signature sig;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && A(p, p) == 0) ++p;
    if (p == n) {
      // all remaining diagonal entries vanish; use e_i + e_j with A(i,j) != 0
      std::size_t i = n, j = n;
      for (std::size_t a = k; a < n && i == n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          if (A(a, b) != 0) {
            i = a;
            j = b;
            break;
          }
      if (i == n) throw InternalError("degenerate form in signature computation");
      A.add_row_multiple(i, j, Rat(1));
      A.add_col_multiple(i, j, Rat(1));
      p = i;
    }
    A.swap_rows(k, p);
    A.swap_cols(k, p);
    const Rat piv = A(k, k);
    (piv > 0 ? sig.n_plus : sig.n_minus) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (A(i, k) == 0) continue;
      const Rat f = -A(i, k) / piv;
      A.add_row_multiple(i, k, f);
      A.add_col_multiple(i, k, f);
    }
  }
  return sig;
}

bool is_definite(const IntegralLattice& lattice) { return signature(lattice).is_definite(); }

IntegralLattice direct_sum(const IntegralLattice& a, const IntegralLattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  std::string label;
  if (!a.label().empty() && !b.label().empty()) label = a.label() + "+" + b.label();
  return IntegralLattice(std::move(g), std::move(label));
}

IntegralLattice rescale(const IntegralLattice& lattice, const Int& n) {
  if (n == 0) throw InvalidInput("rescale by zero");
  std::string label;
  if (!lattice.label().empty()) label = lattice.label() + "(" + n.get_str() + ")";
  return IntegralLattice(n * lattice.gram(), std::move(label));
}

Embedding saturation(const Embedding& e) {
  // row span over Q of B = P^{-1} D Q^{-1} is the span of the first k rows of
  // Q^{-1}, which is a primitive system because Q is unimodular
  const auto s = smith_normal_form(e.basis());
  const IntMatrix q_inv = to_integer(inverse(s.Q));
  return Embedding(e.ambient(), hermite_normal_form(q_inv.select_rows(0, e.rank())));
}

Int saturation_index(const Embedding& e) {
  Int idx = 1;
  for (const auto& d : elementary_divisors(e.basis())) idx *= d;
  return idx;
}

Embedding orthogonal_complement(const Embedding& e) {
  // x·Gᵀ·Bᵀ = 0  <=>  x in left kernel of (B·G)ᵀ
  const IntMatrix bg = e.basis() * e.ambient().gram();
  IntMatrix ker = left_kernel(bg.transpose());
  if (ker.rows() == 0) throw InvalidInput("orthogonal complement is zero");
  return Embedding(e.ambient(), hermite_normal_form(ker));
}

bool same_sublattice(const IntMatrix& a, const IntMatrix& b) {
  return hermite_normal_form(a) == hermite_normal_form(b);
}

namespace builtin {

namespace {
IntMatrix cartan(std::size_t n, std::initializer_list<std::pair<int, int>> edges, int diag) {
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = diag;
  const int off = diag > 0 ? -1 : 1;
  for (auto [a, b] : edges) {
    g(a, b) = off;
    g(b, a) = off;
  }
  return g;
}
}  // namespace

IntegralLattice hyperbolic_plane() { return IntegralLattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }
IntegralLattice a1() { return IntegralLattice(IntMatrix{{2}}, "A1"); }
IntegralLattice a2() { return IntegralLattice(cartan(2, {{0, 1}}, 2), "A2"); }
IntegralLattice d4() { return IntegralLattice(cartan(4, {{0, 1}, {0, 2}, {0, 3}}, 2), "D4"); }

// arms of length 4 (0-1-2-3), 2 (5-6) and 1 (7) meet at node 4
IntegralLattice e8() {
  return IntegralLattice(cartan(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}}, 2),
                         "E8");
}
IntegralLattice e8_minus() {
  return IntegralLattice(cartan(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {4, 7}}, -2),
                         "E8minus");
}

IntegralLattice k3() {
  const auto u = hyperbolic_plane();
  const auto e = e8_minus();
  return direct_sum(direct_sum(direct_sum(u, u), direct_sum(u, e)), e).relabeled("K3");
}

IntegralLattice diagonal(std::initializer_list<long> entries) {
  IntMatrix g(entries.size(), entries.size());
  std::size_t i = 0;
  for (long v : entries) {
    g(i, i) = v;
    ++i;
  }
  return IntegralLattice(std::move(g));
}

namespace {

std::optional<IntegralLattice> named(const std::string& name) {
  static const std::map<std::string, IntegralLattice (*)()> table = {
      {"U", hyperbolic_plane}, {"A1", a1}, {"A2", a2},           {"D4", d4},
      {"E8", e8},              {"E8minus", e8_minus}, {"K3", k3},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second();
}

std::optional<long> parse_long(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t pos = 0;
  try {
    long v = std::stol(s, &pos);
    if (pos != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<IntegralLattice> parse_term(std::string term) {
  long power = 1;
  if (auto caret = term.rfind('^'); caret != std::string::npos && term.find('>', caret) == std::string::npos) {
    auto p = parse_long(term.substr(caret + 1));
    if (!p || *p < 1) return std::nullopt;
    power = *p;
    term = term.substr(0, caret);
  }
  std::optional<long> scale;
  if (!term.empty() && term.back() == ')') {
    auto open = term.rfind('(');
    if (open == std::string::npos) return std::nullopt;
    scale = parse_long(term.substr(open + 1, term.size() - open - 2));
    if (!scale || *scale == 0) return std::nullopt;
    term = term.substr(0, open);
  }
  std::optional<IntegralLattice> base;
  if (term.size() >= 3 && term.front() == '<' && term.back() == '>') {
    auto v = parse_long(term.substr(1, term.size() - 2));
    if (!v || *v == 0 || *v % 2 != 0) return std::nullopt;
    base = IntegralLattice(IntMatrix{{Int(*v)}}, "<" + std::to_string(*v) + ">");
  } else {
    base = named(term);
  }
  if (!base) return std::nullopt;
  if (scale) base = rescale(*base, Int(*scale));
  IntegralLattice out = *base;
  for (long i = 1; i < power; ++i) out = direct_sum(out, *base);
  return out;
}

}  // namespace

std::optional<IntegralLattice> lookup(const std::string& expr) {
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return std::nullopt;
  try {
  std::optional<IntegralLattice> acc;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size()) {
      if (s[i] == '<' || s[i] == '(') ++depth;
      if (s[i] == '>' || s[i] == ')') --depth;
    }
    if (i == s.size() || (s[i] == '+' && depth == 0)) {
      auto term = parse_term(s.substr(start, i - start));
      if (!term) return std::nullopt;
      acc = acc ? direct_sum(*acc, *term) : *term;
      start = i + 1;
    }
  }
    return acc->relabeled(s);
  } catch (const InvalidInput&) {
    return std::nullopt;
  }
}

}  // namespace builtin

}  // namespace evenlat
