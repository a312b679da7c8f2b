#include "evenlat/json_io.hpp"

#include <algorithm>

namespace evenlat {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidInput("at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

std::vector<std::int64_t> orders_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Int v = int_from_json(j[i], at(where, i));
    if (!v.fits_slong_p()) fail(at(where, i), "order out of range");
    out.push_back(v.get_si());
  }
  return out;
}

Json vec_to_json(const std::vector<long>& v) {
  Json a = Json::array();
  for (long x : v) a.push_back(x);
  return a;
}

Json vec_to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

void pretty_into(const Json& j, std::string& out, int indent) {
  const auto flat = [](const Json& a) {
    for (const auto& x : a)
      if (x.is_structured()) return false;
    return true;
  };
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      out += pad + Json(k).dump() + ": ";
      pretty_into(v, out, indent + 2);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  } else if (j.is_array() && !j.empty() && !flat(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      pretty_into(j[i], out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string pretty(const Json& j) {
  std::string out;
  pretty_into(j, out, 0);
  return out;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // locate the byte offset reported by the parser
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InvalidInput(source + ":" + std::to_string(line) + ":" + std::to_string(col) +
                       ": malformed JSON");
  }
}

Json to_json(const Int& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Json to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json rational_to_json(const Rat& x) {
  Rat r = x;
  r.canonicalize();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
    return Int(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() > start && std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return Int(s);
  }
  fail(where, "expected an integer");
}

IntMatrix int_matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of rows");
  std::size_t cols = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) fail(at(where, i), "expected an array");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) fail(at(where, i), "row length differs from row 0");
  }
  IntMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = int_from_json(j[i][c], at(at(where, i), c));
  return m;
}

Rat rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(int_from_json(j, where));
  if (!j.is_string()) fail(where, "expected a rational \"a/b\"");
  const auto& s = j.get_ref<const std::string&>();
  const auto slash = s.find('/');
  const Int num = int_from_json(Json(s.substr(0, slash)), where);
  Int den = 1;
  if (slash != std::string::npos) {
    den = int_from_json(Json(s.substr(slash + 1)), where);
    if (den <= 0) fail(where, "denominator must be positive");
  }
  Rat r(num, den);
  r.canonicalize();
  if (r.get_den() != den) fail(where, "rational \"" + s + "\" is not in lowest terms");
  return r;
}

Json to_json(const IntegralLattice& l) {
  Json j = Json::object();
  if (!l.label().empty()) j["label"] = l.label();
  j["gram"] = to_json(l.gram());
  return j;
}

IntegralLattice lattice_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    auto l = builtin::lookup(j.get<std::string>());
    if (!l) fail(where, "unknown built-in lattice \"" + j.get<std::string>() + "\"");
    return *l;
  }
  const IntMatrix g = int_matrix_from_json(field(j, "gram", where), at(where, "gram"));
  std::string label;
  if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) fail(at(where, "label"), "expected a string");
    label = it->get<std::string>();
  }
  try {
    return IntegralLattice(g, label);
  } catch (const InvalidInput& e) {
    fail(at(where, "gram"), e.what());
  }
}

Json to_json(const Embedding& e) {
  Json j = Json::object();
  j["ambient"] = to_json(e.ambient());
  j["basis"] = to_json(e.basis());
  return j;
}

Embedding embedding_from_json(const Json& j, const std::string& where) {
  IntegralLattice ambient = lattice_from_json(field(j, "ambient", where), at(where, "ambient"));
  const IntMatrix basis = int_matrix_from_json(field(j, "basis", where), at(where, "basis"));
  try {
    return Embedding(std::move(ambient), basis);
  } catch (const InvalidInput& e) {
    fail(at(where, "basis"), e.what());
  }
}

Json to_json(const FiniteQuadraticForm& a) {
  Json j = Json::object();
  Json orders = Json::array(), q = Json::array(), b = Json::array();
  for (std::size_t i = 0; i < a.num_generators(); ++i) {
    orders.push_back(a.orders()[i]);
    q.push_back(rational_to_json(a.q_generator(i)));
    Json row = Json::array();
    for (std::size_t k = 0; k < a.num_generators(); ++k) row.push_back(rational_to_json(a.b_generator(i, k)));
    b.push_back(std::move(row));
  }
  j["orders"] = std::move(orders);
  j["q"] = std::move(q);
  j["b"] = std::move(b);
  return j;
}

FiniteQuadraticForm fqf_from_json(const Json& j, const std::string& where) {
  auto orders = orders_from_json(field(j, "orders", where), at(where, "orders"));
  const std::size_t k = orders.size();
  const Json& jq = field(j, "q", where);
  const Json& jb = field(j, "b", where);
  if (!jq.is_array() || jq.size() != k) fail(at(where, "q"), "expected " + std::to_string(k) + " values");
  if (!jb.is_array() || jb.size() != k) fail(at(where, "b"), "expected " + std::to_string(k) + " rows");
  RatVector q(k);
  RatMatrix b(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    q[i] = rational_from_json(jq[i], at(at(where, "q"), i));
    const std::string row = at(at(where, "b"), i);
    if (!jb[i].is_array() || jb[i].size() != k) fail(row, "expected " + std::to_string(k) + " values");
    for (std::size_t c = 0; c < k; ++c) b(i, c) = rational_from_json(jb[i][c], at(row, c));
  }
  try {
    return FiniteQuadraticForm(std::move(orders), std::move(q), std::move(b));
  } catch (const InvalidInput& e) {
    fail(where, e.what());
  }
}

Json to_json(const GlueMap& g) {
  Json j = Json::object();
  j["left"] = to_json(g.left);
  j["right"] = to_json(g.right);
  Json graph = Json::array();
  for (const auto& x : g.graph) graph.push_back(x);
  j["graph"] = std::move(graph);
  return j;
}

GlueMap glue_from_json(const Json& j, const std::string& where) {
  GlueMap g;
  g.left = fqf_from_json(field(j, "left", where), at(where, "left"));
  g.right = fqf_from_json(field(j, "right", where), at(where, "right"));
  const Json& graph = field(j, "graph", where);
  if (!graph.is_array()) fail(at(where, "graph"), "expected an array of rows");
  const std::size_t width = g.left.num_generators() + g.right.num_generators();
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const std::string row = at(at(where, "graph"), i);
    if (!graph[i].is_array() || graph[i].size() != width)
      fail(row, "expected " + std::to_string(width) + " coordinates");
    Element x;
    for (std::size_t c = 0; c < width; ++c) {
      const Int v = int_from_json(graph[i][c], at(row, c));
      if (!v.fits_slong_p()) fail(at(row, c), "coordinate out of range");
      x.push_back(v.get_si());
    }
    g.graph.push_back(std::move(x));
  }
  return g;
}

Json to_json(const Isometry& g) {
  Json j = Json::object();
  j["matrix"] = to_json(g.matrix());
  j["det"] = g.det();
  j["stable"] = g.stable();
  return j;
}

Isometry isometry_from_json(const Json& j, const IntegralLattice& lattice, const std::string& where) {
  const IntMatrix m = int_matrix_from_json(field(j, "matrix", where), at(where, "matrix"));
  try {
    return Isometry(lattice, m);
  } catch (const InvalidInput& e) {
    fail(at(where, "matrix"), e.what());
  }
}

Json to_json(const Signature& s) { return Json::array({s.n_plus, s.n_minus}); }

Json to_json(const StabilityReport& r) {
  Json j = Json::object();
  if (!r.label.empty()) j["lattice"] = r.label;
  j["signature"] = to_json(r.signature);
  j["length"] = r.length;
  j["rank"] = r.rank;
  j["is_stable"] = r.stable;
  j["is_very_stable"] = r.very_stable;
  return j;
}

Json to_json(const ComponentConstants& c) {
  Json j = Json::object();
  j["bounded"] = c.bounded;
  if (c.bounded) {
    j["max_components"] = c.max_components;
    j["s_to_m_degree"] = c.s_to_m_degree;
    j["degree_exact"] = c.degree_exact;
  }
  j["note"] = c.note;
  return j;
}

Json to_json(const LineClassCount& c) {
  Json j = Json::object();
  j["p"] = c.p;
  j["isotropic"] = to_json(c.isotropic);
  j["square"] = to_json(c.square);
  j["nonsquare"] = to_json(c.nonsquare);
  j["total"] = to_json(c.total());
  return j;
}

Json to_json(const IndexPSublattice& s) {
  Json j = Json::object();
  j["p"] = s.p;
  j["alpha"] = vec_to_json(s.alpha);
  j["basis"] = to_json(s.basis);
  j["dual_line"] = s.dual_line ? vec_to_json(*s.dual_line) : Json(nullptr);
  return j;
}

Json to_json(const DiscSplit& d) {
  Json j = Json::object();
  j["det"] = to_json(d.det);
  j["length"] = d.length;
  j["p_part"] = to_string(d.tag);
  j["predicted_p_part"] = to_string(d.predicted);
  j["prime_to_p_matches"] = d.prime_to_p_matches ? Json(*d.prime_to_p_matches) : Json(nullptr);
  j["form"] = to_json(d.form);
  return j;
}

Json to_json(const GroupReport& r) {
  Json j = Json::object();
  j["order"] = r.order;
  Json gens = Json::array();
  for (const auto& g : r.generators) gens.push_back(to_json(g));
  j["generators"] = std::move(gens);
  j["stable_order"] = r.stable_order;
  j["stable_index"] = r.stable_index;
  j["closed"] = r.closed;
  j["injective_mod3"] = r.injective_mod3;
  j["order_divides_gl_n_f3"] = r.divides_gl3;
  return j;
}

Json to_json(const JordanDecomposition& d) {
  Json j = Json::object();
  j["p"] = d.p;
  j["precision"] = d.precision;
  Json blocks = Json::array();
  for (const auto& b : d.blocks) {
    Json jb = Json::object();
    jb["scale"] = b.scale;
    jb["rank"] = b.rank;
    jb["det_class"] = b.det_class;
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

Json to_json(const UnitNormVector& u) {
  Json j = Json::object();
  j["vector"] = vec_to_json(u.x);
  j["norm"] = to_json(u.norm);
  j["integral"] = u.integral;
  Json rows = Json::array();
  for (std::size_t i = 0; i < u.reflection.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t c = 0; c < u.reflection.cols(); ++c) r.push_back(rational_to_json(u.reflection(i, c)));
    rows.push_back(std::move(r));
  }
  j["reflection"] = std::move(rows);
  return j;
}

Json to_json(const CoveringCertificate& c) {
  Json j = Json::object();
  j["p"] = c.p;
  j["line_counts"] = to_json(c.counts);
  j["bound"] = to_json(c.bound);
  j["assumptions"] = c.assumptions;
  j["N"] = to_json(c.n);
  j["target"] = to_string(c.target);
  j["constant"] = c.constant;
  j["constant_reason"] = c.constant_reason;
  j["stability"] = to_json(c.stability);
  j["components"] = to_json(c.components);
  Json subs = Json::array();
  for (const auto& s : c.sublattices) {
    Json js = Json::object();
    js["id"] = s.id;
    js["alpha"] = vec_to_json(s.sub.alpha);
    js["basis"] = to_json(s.sub.basis);
    js["p_part"] = to_string(s.tag);
    js["length"] = s.length;
    js["very_stable"] = s.very_stable;
    subs.push_back(std::move(js));
  }
  j["sublattices"] = std::move(subs);
  return j;
}

namespace {
Json to_json(const EdgeBound& e) {
  Json j = Json::object();
  j["bound"] = evenlat::to_json(e.bound);
  j["source"] = e.source;
  j["detail"] = e.detail;
  return j;
}
}  // namespace

Json to_json(const TriangleDatum& t) {
  Json j = Json::object();
  j["p"] = t.p;
  j["s_prime"] = to_json(t.s_prime);
  j["admissible_count"] = t.admissible;
  j["f"] = to_json(t.f);
  j["f_prime"] = to_json(t.f_prime);
  j["pi"] = to_json(t.pi);
  j["commutes"] = t.commutes;
  j["saturation_index"] = to_json(t.saturation_index);
  j["bounds"] = {{"f", to_json(t.f_bound)}, {"f_prime", to_json(t.f_prime_bound)}, {"pi", to_json(t.pi_bound)}};
  return j;
}

Json to_json(const BrauerPair& b) {
  Json j = Json::object();
  j["alpha"] = vec_to_json(b.alpha);
  j["recovered"] = vec_to_json(b.recovered);
  j["basis"] = to_json(b.sub.basis);
  return j;
}

}  // namespace evenlat
