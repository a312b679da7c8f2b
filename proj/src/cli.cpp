#include "evenlat/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"

#include "evenlat/json_io.hpp"

namespace evenlat {

namespace {

struct Options {
  std::string lattice;
  std::string hyperbolic, transcendental, glue, embedding;
  long p = 0;
  std::string n;
  std::optional<std::size_t> budget;
  std::string target = "S";
  std::optional<long> precision;
  std::string out;
  bool human = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A file holding JSON, inline JSON, or a built-in expression such as "U^2+<-2>".
Json load_json_arg(const std::string& arg, const char* what) {
  if (arg.empty()) throw InvalidInput(std::string("missing --") + what);
  if (arg.front() == '{' || arg.front() == '[') return parse_json(arg, std::string("--") + what);
  if (std::filesystem::is_regular_file(arg)) return parse_json(read_file(arg), arg);
  return Json(arg);
}

IntegralLattice load_lattice(const std::string& arg, const char* what) {
  const Json j = load_json_arg(arg, what);
  if (j.is_string() && !builtin::lookup(j.get<std::string>()))
    throw InvalidInput("--" + std::string(what) + ": \"" + arg + "\" is neither a file nor a built-in lattice");
  return lattice_from_json(j);
}

Int parse_n(const std::string& s) {
  if (s.empty()) throw InvalidInput("missing --N");
  const Int n = int_from_json(Json(s), "--N");
  if (n < 1) throw InvalidInput("--N must be positive");
  return n;
}

long require_p(const Options& o) {
  if (o.p == 0) throw InvalidInput("missing --p");
  if (!is_prime(o.p)) throw InvalidInput("--p " + std::to_string(o.p) + " is not prime");
  return o.p;
}

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (!is_scalar(x)) return false;
  return true;
}

void render(const Json& j, std::ostream& os, int indent);

void render_table(const Json& rows, std::ostream& os, int indent) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : rows.front().items()) keys.push_back(k);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& k : keys) width.push_back(k.size());
  for (const auto& r : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < keys.size(); ++c) {
      auto it = r.find(keys[c]);
      std::string s = it == r.end() ? "" : (is_scalar(*it) ? scalar(*it) : it->dump());
      width[c] = std::max(width[c], s.size());
      line.push_back(std::move(s));
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    os << std::string(indent, ' ');
    for (std::size_t c = 0; c < line.size(); ++c)
      os << std::left << std::setw(static_cast<int>(width[c]) + 2) << line[c];
    os << '\n';
  };
  emit(keys);
  for (const auto& line : cells) emit(line);
}

void render(const Json& j, std::ostream& os, int indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_scalar(v) || is_flat_array(v)) {
        os << pad << k << ": " << (is_scalar(v) ? scalar(v) : v.dump()) << '\n';
      } else {
        os << pad << k << ":\n";
        render(v, os, indent + 2);
      }
    }
  } else if (j.is_array()) {
    if (j.empty()) {
      os << pad << "(none)\n";
    } else if (j.front().is_object()) {
      render_table(j, os, indent);
    } else {
      for (const auto& row : j) os << pad << (is_scalar(row) ? scalar(row) : row.dump()) << '\n';
    }
  } else {
    os << pad << scalar(j) << '\n';
  }
}

Json cmd_info(const Options& o) {
  const IntegralLattice l = load_lattice(o.lattice, "lattice");
  Json j = Json::object();
  j["lattice"] = to_json(l);
  j["rank"] = l.rank();
  j["signature"] = to_json(signature(l));
  j["det"] = to_json(l.det());
  try {
    const auto d = discriminant_form(l);
    j["discriminant_form"] = to_json(d.form);
    j["length"] = length(d.form);
  } catch (const Refusal& r) {
    j["discriminant_form"] = nullptr;
    j["discriminant_form_refused"] = r.what();
  }
  const auto st = stability(l);
  j["stability"] = to_json(st);
  j["components"] = to_json(component_constants(st));
  const Signature sig = signature(l);
  if (sig.n_plus == 1 && l.rank() <= 20) {
    const auto c = check_unique_embedding(l);
    j["unique_k3_embedding"] = {{"satisfied", c.satisfied}, {"reason", c.reason}};
  }
  if (!sig.is_definite()) {
    const auto c = check_unique_in_genus(l);
    j["unique_in_genus"] = {{"satisfied", c.satisfied}, {"reason", c.reason}};
  }
  return j;
}

Json cmd_glue_k3(const Options& o) {
  const IntegralLattice l = load_lattice(o.hyperbolic, "hyperbolic");
  const IntegralLattice t = load_lattice(o.transcendental, "transcendental");
  GlueMap glue;
  if (!o.glue.empty()) {
    glue = glue_from_json(parse_json(read_file(o.glue), o.glue));
  } else {
    auto found = find_anti_isometry(discriminant_form(t).form, discriminant_form(l).form, o.budget.value_or(100000));
    if (!found) throw InvalidInput("the discriminant forms of T and L are not anti-isometric");
    glue = std::move(*found);
  }
  const K3Gluing k = glue_to_k3(l, t, glue);
  Json j = Json::object();
  j["glue"] = to_json(glue);
  j["k3"] = to_json(k.result.lattice);
  j["signature"] = to_json(signature(k.result.lattice));
  j["det"] = to_json(k.result.lattice.det());
  j["hyperbolic"] = to_json(k.hyperbolic.basis());
  j["transcendental"] = to_json(k.transcendental.basis());
  return j;
}

Json cmd_aut(const Options& o) {
  const IntegralLattice l = load_lattice(o.lattice, "lattice");
  const auto group = automorphism_group(l, o.budget.value_or(1000000));
  Json j = Json::object();
  j["lattice"] = to_json(l);
  j["group"] = to_json(group_report(l, group));
  return j;
}

Json cmd_lines(const Options& o) {
  const IntegralLattice l = load_lattice(o.lattice, "lattice");
  const auto c = line_classes(l, require_p(o));
  Json j = to_json(c);
  j["bound"] = to_json(line_bound(c));
  return j;
}

Json cmd_sublattices(const Options& o) {
  const IntegralLattice l = load_lattice(o.lattice, "lattice");
  const long p = require_p(o);
  const bool split = p != 2 && mpz_divisible_ui_p(l.det().get_mpz_t(), static_cast<unsigned long>(p)) == 0;
  Json list = Json::array();
  for (const auto& sub : enumerate_index_p_sublattices(l, p)) {
    Json js = to_json(sub);
    if (split) js["split"] = to_json(sublattice_disc_split(l, sub, o.budget.value_or(4096)));
    list.push_back(std::move(js));
  }
  Json j = Json::object();
  j["p"] = p;
  j["count"] = list.size();
  j["det"] = to_json(l.det());
  j["sublattices"] = std::move(list);
  return j;
}

Json cmd_jordan(const Options& o) {
  const IntegralLattice l = load_lattice(o.lattice, "lattice");
  const long p = require_p(o);
  Json j = to_json(jordan_decompose(l, p, o.precision));
  try {
    j["unit_norm_vector"] = to_json(find_unit_norm_vector(l, p));
  } catch (const Refusal& r) {
    j["unit_norm_vector"] = nullptr;
    j["unit_norm_vector_refused"] = r.what();
  }
  return j;
}

Json cmd_plan_cover(const Options& o) {
  const IntegralLattice l = load_lattice(o.lattice, "lattice");
  const Target t = o.target == "M" ? Target::M : Target::S;
  return to_json(plan_covering(l, parse_n(o.n), t));
}

Json cmd_triangle(const Options& o) {
  const Json j = load_json_arg(o.embedding, "embedding");
  if (j.is_string()) throw InvalidInput("--embedding must be a file or inline JSON");
  return to_json(build_triangle(embedding_from_json(j), require_p(o), o.budget.value_or(100000)));
}

Json cmd_brauer_map(const Options& o) {
  const IntegralLattice l = load_lattice(o.lattice, "lattice");
  const long p = require_p(o);
  Json pairs = Json::array();
  for (const auto& b : sublattice_brauer_bijection(l, p)) pairs.push_back(to_json(b));
  Json j = Json::object();
  j["p"] = p;
  j["count"] = pairs.size();
  j["pairs"] = std::move(pairs);
  return j;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Even lattice toolkit: discriminant forms, K3 gluing, covering certificates"};
  app.require_subcommand(1);
  Options o;

  using Handler = Json (*)(const Options&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* desc, Handler h) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--out", o.out, "write the JSON report to this file");
    sub->add_flag("--human", o.human, "render a table instead of JSON");
    commands.emplace_back(sub, h);
    return sub;
  };
  auto lattice_opt = [&](CLI::App* sub) { sub->add_option("--lattice", o.lattice, "JSON file or built-in")->required(); };
  auto p_opt = [&](CLI::App* sub) { sub->add_option("--p", o.p, "prime")->required(); };
  auto budget_opt = [&](CLI::App* sub) { sub->add_option("--budget", o.budget, "search budget"); };

  auto* info = add("info", "signature, determinant, discriminant form and stability", cmd_info);
  lattice_opt(info);

  auto* glue = add("glue-k3", "glue L and T into the K3 lattice", cmd_glue_k3);
  glue->add_option("--hyperbolic", o.hyperbolic, "L, signature (1, r-1)")->required();
  glue->add_option("--transcendental", o.transcendental, "T, signature (2, 20-r)")->required();
  glue->add_option("--glue", o.glue, "GlueMap JSON; searched for when omitted");
  budget_opt(glue);

  auto* aut = add("aut", "automorphism group of a definite lattice", cmd_aut);
  lattice_opt(aut);
  budget_opt(aut);

  auto* lines = add("lines", "isotropic, square and nonsquare line counts mod p", cmd_lines);
  lattice_opt(lines);
  p_opt(lines);

  auto* subs = add("sublattices", "index-p sublattices and their discriminant forms", cmd_sublattices);
  lattice_opt(subs);
  p_opt(subs);
  budget_opt(subs);

  auto* jordan = add("jordan", "p-adic Jordan decomposition", cmd_jordan);
  lattice_opt(jordan);
  p_opt(jordan);
  jordan->add_option("--precision", o.precision, "p-adic precision");

  auto* plan = add("plan-cover", "covering certificate for a very stable lattice", cmd_plan_cover);
  lattice_opt(plan);
  plan->add_option("--N", o.n, "required degree lower bound")->required();
  plan->add_option("--target", o.target, "quotient: S or M")->check(CLI::IsMember({"S", "M"}));

  auto* tri = add("triangle", "corank-one triangle T -> S' -> S", cmd_triangle);
  tri->add_option("--embedding", o.embedding, "Embedding JSON of T in S")->required();
  p_opt(tri);
  budget_opt(tri);

  auto* brauer = add("brauer-map", "index-p sublattices paired with lines in Hom(S, Z/p)", cmd_brauer_map);
  lattice_opt(brauer);
  p_opt(brauer);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Json report;
    for (auto& [sub, handler] : commands)
      if (sub->parsed()) report = handler(o);
    std::ostringstream text;
    if (o.human)
      render(report, text, 0);
    else
      text << pretty(report) << '\n';
    if (o.out.empty()) {
      out << text.str();
    } else {
      std::ofstream f(o.out);
      if (!f) throw InvalidInput("cannot write " + o.out);
      f << text.str();
    }
    return 0;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << '\n';
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace evenlat
