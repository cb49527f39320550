#include "fox/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <random>
#include <sstream>

#include "fox/fox_group.hpp"
#include "fox/fox_lie.hpp"
#include "fox/freiheit.hpp"
#include "fox/transversal.hpp"

namespace fox::cli {

namespace {

using Json = nlohmann::ordered_json;

// Validated command-line state shared by every subcommand.
struct RunConfig {
  int rank = 2;
  std::string factors;
  std::string word, relator, expr, gen, quotient = "abelian", K, style = "shortlex";
  std::string ideal = "power:2", derive_ideal = "none", root = "F", spec;
  int cutoff = 6, bound = 6, degree = 1, n = 2, level = 0, samples = 0;
  bool assoc = false;
  std::uint64_t seed = 1;
  std::string output;
};

struct Outcome {
  Json doc;
  int code = 0;
  std::string summary;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer for " + what, 0);
  }
  if (used != text.size()) throw ParseError("trailing characters in " + what, used);
  return v;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  if (text.empty()) return out;
  for (const std::string& t : split(text, ',')) out.push_back(parse_int(t, what));
  return out;
}

std::vector<Integer> parse_integer_list(const std::string& text, const std::string& what) {
  std::vector<Integer> out;
  for (int v : parse_int_list(text, what)) out.emplace_back(v);
  return out;
}

AlphabetPtr alphabet_of(const RunConfig& c) {
  std::vector<int> orders = parse_int_list(c.factors, "--factors");
  return make_alphabet(c.rank, orders);
}

// trivial | identity | abelian | nilpotent:c | finite:ORDERS/IMG;IMG[/FIMG;FIMG]
QuotientOracle parse_quotient(const AlphabetPtr& A, const std::string& text) {
  if (text == "trivial") return QuotientOracle::trivial(A);
  if (text == "identity") return QuotientOracle::identity_subgroup(A);
  if (text == "abelian") return QuotientOracle::abelianization(A);
  if (text.rfind("nilpotent:", 0) == 0) return QuotientOracle::free_nilpotent(A, parse_int(text.substr(10), "nilpotency class"));
  if (text.rfind("finite:", 0) == 0) {
    auto parts = split(text.substr(7), '/');
    if (parts.size() < 2 || parts.size() > 3) throw ParseError("finite quotient needs ORDERS/IMAGES[/FACTOR_IMAGES]", 7);
    auto images = [](const std::string& s) {
      std::vector<std::vector<Integer>> out;
      for (const std::string& t : split(s, ';')) out.push_back(parse_integer_list(t, "image"));
      return out;
    };
    return QuotientOracle::finite_abelian(A, parse_integer_list(parts[0], "orders"), images(parts[1]),
                                          parts.size() == 3 ? images(parts[2]) : std::vector<std::vector<Integer>>{});
  }
  throw ParseError("unknown quotient '" + text + "'", 0);
}

FoxIndex parse_fox_index(const std::string& t) {
  if (t.empty()) throw ParseError("empty Fox index", 0);
  if (t[0] == 'a') return FoxIndex::factor(parse_int(t.substr(1), "factor index"));
  if (t[0] == 'g') return FoxIndex::free(parse_int(t.substr(1), "generator index"));
  return FoxIndex::free(parse_int(t, "generator index"));
}

std::set<FoxIndex> parse_fox_set(const std::string& text) {
  std::set<FoxIndex> K;
  if (!text.empty())
    for (const std::string& t : split(text, ',')) K.insert(parse_fox_index(t));
  return K;
}

int parse_power(const std::string& text, const std::string& what) {
  if (text == "F") return 1;
  if (text.rfind("power:", 0) == 0) return parse_int(text.substr(6), what);
  throw ParseError("expected F or power:m for " + what, 0);
}

GradedSubspace ideal_of(const RunConfig& c) {
  const int m = parse_power(c.ideal, "--ideal");
  if (m < 1) throw PreconditionError("ideal power must be >= 1");
  return GradedSubspace::power(c.rank, c.cutoff, m);
}

Json ring_json(const RingElt& a) {
  Json terms = Json::array();
  for (const auto& [w, k] : a.sorted_terms()) terms.push_back({{"coeff", k.get_str()}, {"word", to_string(w)}});
  return terms;
}

Json residues_json(const std::map<FoxIndex, Residue>& r) {
  Json out = Json::object();
  for (const auto& [k, res] : r) out[to_string(k)] = to_string(res);
  return out;
}

Json assoc_map_json(const std::map<int, AssocPoly>& m) {
  Json out = Json::object();
  for (const auto& [j, p] : m) out[std::to_string(j)] = to_string(p);
  return out;
}

// ---------------------------------------------------------------- group

Outcome group_derive(const RunConfig& c) {
  AlphabetPtr A = alphabet_of(c);
  Word w = parse_word(A, c.word);
  std::vector<FoxIndex> idx = c.gen.empty() ? all_fox_indices(*A) : std::vector<FoxIndex>{parse_fox_index(c.gen)};
  Outcome o;
  o.doc["word"] = to_string(w);
  Json ds = Json::array();
  for (const FoxIndex& k : idx) {
    RingElt d = fox_derivative(w, k);
    ds.push_back({{"index", to_string(k)}, {"text", to_string(d)}, {"terms", ring_json(d)}});
  }
  o.doc["derivatives"] = ds;
  if (idx.size() == 1) o.doc["terms"] = ds[0]["terms"];
  o.summary = "derived " + std::to_string(idx.size()) + " Fox derivative(s) of " + to_string(w);
  return o;
}

Outcome group_schumann(const RunConfig& c) {
  AlphabetPtr A = alphabet_of(c);
  Word v = parse_word(A, c.word);
  QuotientOracle q = parse_quotient(A, c.quotient);
  CriterionReport r = schumann_check(v, q);
  Outcome o;
  o.doc = {{"word", to_string(v)}, {"quotient", q.describe()}, {"holds", r.holds}, {"residues", residues_json(r.residues)},
           {"witness", r.witness ? Json(*r.witness) : Json(nullptr)}, {"status", r.status}};
  o.code = r.holds ? 0 : 1;
  o.summary = std::string("v in [N,N]: ") + (r.holds ? "yes" : "no");
  return o;
}

Outcome group_theorem1(const RunConfig& c) {
  AlphabetPtr A = alphabet_of(c);
  Word v = parse_word(A, c.word);
  QuotientOracle q = parse_quotient(A, c.quotient);
  Theorem1Report r = theorem1_check(v, parse_fox_set(c.K), q, c.bound);
  Outcome o;
  o.doc = {{"word", to_string(v)},
           {"quotient", q.describe()},
           {"holds", r.holds},
           {"residues", residues_json(r.residues)},
           {"witness", r.witness ? Json(to_string(*r.witness)) : Json(nullptr)},
           {"witness_source", r.witness_source},
           {"lattice_membership", r.lattice_membership},
           {"agree", r.agree},
           {"status", r.status},
           {"bounds_hit", r.status == "no-witness"}};
  o.code = r.holds ? 0 : 1;
  o.summary = std::string("derivative criterion ") + (r.holds ? "holds" : "fails") + ", lattice verdict " +
              (r.lattice_membership ? "member" : "non-member");
  return o;
}

Outcome group_gamma(const RunConfig& c) {
  AlphabetPtr A = alphabet_of(c);
  Word v = parse_word(A, c.word);
  std::set<int> K;
  for (int k : parse_int_list(c.K, "--K")) K.insert(k);
  GammaCriterionResult r = subgroup_gamma_criterion(v, K, c.n, std::max(c.cutoff, c.n + 1));
  Outcome o;
  o.doc = {{"word", to_string(v)}, {"n", c.n}, {"holds", r.holds}, {"vbar", to_string(r.vbar)},
           {"residual_weight", to_string(r.residual)}, {"retraction_check", r.retraction_check}, {"reason", r.reason}};
  o.code = r.holds ? 0 : 1;
  o.summary = std::string("v in <F_K, gamma_n+1>: ") + (r.holds ? "yes" : "no");
  return o;
}

Outcome group_transversal(const RunConfig& c) {
  AlphabetPtr A = alphabet_of(c);
  QuotientOracle q = parse_quotient(A, c.quotient);
  Transversal::Style style;
  if (c.style == "shortlex") style = Transversal::Style::shortlex;
  else if (c.style == "alphabeta") style = Transversal::Style::alpha_beta;
  else throw ParseError("unknown style '" + c.style + "'", 0);
  Transversal t(q, style);
  Outcome o;
  Json reps = Json::array();
  for (const Word& s : t.representatives()) {
    Json r = {{"word", to_string(s)}};
    if (style == Transversal::Style::alpha_beta)
      r["class"] = t.class_kind(s) == Transversal::ClassKind::alpha ? "alpha" : "beta";
    reps.push_back(r);
  }
  Json gens = Json::array();
  for (const SchreierGenerator& g : schreier_generators(t))
    gens.push_back({{"s", to_string(g.s)}, {"x", to_string(Word::from_symbol(A, g.x))}, {"w", to_string(g.w)}});
  o.doc = {{"quotient", q.describe()}, {"style", c.style}, {"index", reps.size()}, {"prefix_closed", t.prefix_closed()},
           {"representatives", reps}, {"generators", gens}};
  o.summary = std::to_string(reps.size()) + " representatives, " + std::to_string(gens.size()) + " Schreier generators";
  return o;
}

Outcome group_conjcrit(const RunConfig& c) {
  AlphabetPtr A = make_alphabet(c.rank);
  if (c.relator.empty()) throw PreconditionError("--relator is required");
  Word r = parse_word(A, c.relator);
  int i = c.level;
  if (i == 0) {
    FiltrationWeight w = gamma_weight(r, c.cutoff);
    if (w.at_least) throw PreconditionError("relator lies in gamma_" + std::to_string(w.value) + "; raise --cutoff or pass --level");
    i = w.value;
  }
  GroupCriterionResult g = group_criterion_bruteforce(r, i, c.bound);
  Outcome o;
  o.doc = {{"relator", to_string(r)},
           {"i", i},
           {"leading", to_string(g.leading)},
           {"conjugate_found", g.conjugate_found},
           {"criterion_holds", !g.conjugate_found},
           {"mode", g.mode},
           {"witness", g.witness ? Json{{"conjugator", to_string(g.witness->first)}, {"word", to_string(g.witness->second)}}
                                 : Json(nullptr)}};
  o.code = g.conjugate_found ? 1 : 0;
  o.summary = std::string("r ") + (g.conjugate_found ? "is" : "is not") + " conjugate mod gamma_" + std::to_string(i + 1) +
              " to a word avoiding g" + std::to_string(c.rank) + " (" + g.mode + ")";
  return o;
}

// ---------------------------------------------------------------- lie

LieElt lie_expr(const RunConfig& c, const std::string& text, const char* flag) {
  if (text.empty()) throw PreconditionError(std::string(flag) + " is required");
  return parse_lie(c.rank, text);
}

Outcome lie_derive(const RunConfig& c) {
  if (c.expr.empty()) throw PreconditionError("--expr is required");
  AssocPoly u = c.assoc ? parse_assoc_poly(c.rank, c.expr) : expand_to_assoc(parse_lie(c.rank, c.expr));
  LieFoxVector d = lie_fox(u);
  Outcome o;
  o.doc = {{"expr", c.expr}, {"expanded", to_string(u)}, {"constant", rational_to_string(d.constant)},
           {"parts", assoc_map_json(d.parts)}};
  if (c.derive_ideal != "none") {
    RunConfig with_ideal = c;
    with_ideal.ideal = c.derive_ideal;
    IdealReducer R(ideal_of(with_ideal));
    std::map<int, AssocPoly> reduced;
    for (const auto& [j, p] : d.parts) {
      if (p.degree() > c.cutoff) throw PreconditionError("D_" + std::to_string(j) + " exceeds the cutoff");
      AssocPoly rp = R.reduce(p);
      if (!rp.is_zero()) reduced.emplace(j, rp);
    }
    o.doc["ideal"] = c.derive_ideal;
    o.doc["reduced"] = assoc_map_json(reduced);
  }
  o.summary = std::to_string(d.parts.size()) + " nonzero derivative(s)";
  return o;
}

Outcome lie_decompose(const RunConfig& c) {
  LieElt v = lie_expr(c, c.expr, "--expr");
  std::set<int> K;
  for (int k : parse_int_list(c.K, "--K")) K.insert(k);
  TheoremDecomposition t = theorem_decomposition(v, K, ideal_of(c));
  Outcome o;
  o.doc = {{"expr", to_string(v)}, {"holds", t.holds}, {"v0", to_string(t.v0)}, {"v1", to_string(t.v1)},
           {"certified", t.certified}, {"offending", assoc_map_json(t.offending)}};
  o.code = t.holds ? 0 : 1;
  o.summary = std::string("v in F_K + id(F_K∩N) + [N,N]: ") + (t.holds ? "yes" : "no");
  return o;
}

Outcome lie_kharlampovich(const RunConfig& c) {
  GradedSubspace N = ideal_of(c);
  IdealContext ctx(N);
  Outcome o;
  if (c.samples > 0) {
    std::mt19937_64 rng(c.seed);
    int mismatches = 0;
    for (int t = 0; t < c.samples; ++t) {
      LieElt v(c.rank);
      for (int k = 0; k < 3; ++k) {
        int d = std::uniform_int_distribution<int>(1, c.cutoff)(rng);
        auto b = N.basis(d);
        if (b.empty()) continue;
        v = v + Rational(std::uniform_int_distribution<int>(-3, 3)(rng)) *
                    b[std::uniform_int_distribution<std::size_t>(0, b.size() - 1)(rng)];
      }
      mismatches += !kharlampovich_check(v, ctx).agree;
    }
    o.doc = {{"samples", c.samples}, {"seed", c.seed}, {"mismatches", mismatches}};
    o.code = mismatches == 0 ? 0 : 1;
    o.summary = std::to_string(mismatches) + " mismatch(es) in " + std::to_string(c.samples) + " samples";
    return o;
  }
  LieElt v = lie_expr(c, c.expr, "--expr");
  KharlampovichReport r = kharlampovich_check(v, ctx);
  o.doc = {{"expr", to_string(v)}, {"derivative_verdict", r.derivative_verdict}, {"membership", r.membership},
           {"agree", r.agree}, {"residues", assoc_map_json(r.residues)}};
  o.code = r.agree ? 0 : 1;
  o.summary = std::string("v in [N,N]: ") + (r.membership ? "yes" : "no") + ", derivative verdict agrees: " + (r.agree ? "yes" : "no");
  return o;
}

Outcome lie_freiheit(const RunConfig& c) {
  LieElt r = lie_expr(c, c.relator, "--relator");
  SeriesSpec spec = SeriesSpec::lower_central(c.cutoff);
  if (!c.spec.empty()) spec.blocks = parse_int_list(c.spec, "--spec");
  spec.root_power = parse_power(c.root, "--root");
  FreiheitReport rep = lie_freiheitssatz_verify(r, spec, c.cutoff);
  Outcome o;
  Json members = Json::array();
  for (const auto& m : rep.members) {
    Json degrees = Json::array();
    for (const auto& d : m.degrees)
      degrees.push_back({{"degree", d.degree}, {"with_relator", d.with_relator}, {"without_relator", d.without_relator}});
    members.push_back({{"k", m.k}, {"l", m.l}, {"equal", m.equal}, {"degrees", degrees},
                       {"witness", m.witness ? Json(to_string(*m.witness)) : Json(nullptr)}});
  }
  o.doc = {{"relator", to_string(r)},
           {"criterion", {{"k", rep.criterion.k}, {"level", rep.criterion.level}, {"satisfied", rep.criterion.satisfied},
                          {"next", rep.criterion.next_label}}},
           {"all_equal", rep.all_equal},
           {"consistent", rep.consistent},
           {"members", members}};
  o.code = rep.criterion.satisfied && rep.consistent ? 0 : 1;
  o.summary = std::string("criterion ") + (rep.criterion.satisfied ? "satisfied" : "not satisfied") + "; dims " +
              (rep.all_equal ? "all equal" : "differ") + (rep.consistent ? "" : " (INCONSISTENT)");
  return o;
}

Outcome lie_dims(const RunConfig& c) {
  if (c.rank < 1 || c.degree < 1) throw PreconditionError("rank and degree must be >= 1");
  Outcome o;
  Integer d = witt_dimension(c.rank, c.degree);
  o.doc = {{"dim", d.get_si()}};
  o.summary = "dim L_" + std::to_string(c.degree) + " = " + d.get_str();
  return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Fox calculus on free groups and free Lie algebras", "fox"};
  app.require_subcommand(1);
  app.add_option("--output", c.output, "write JSON here instead of stdout");
  app.add_option("--seed", c.seed, "seed for randomized sweeps");
  app.fallthrough();

  std::vector<std::pair<CLI::App*, std::function<Outcome(const RunConfig&)>>> leaves;
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, auto fn) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    leaves.emplace_back(s, fn);
    return s;
  };

  CLI::App* group = app.add_subcommand("group", "free groups and free products");
  group->require_subcommand(1);
  group->fallthrough();
  auto alphabet_opts = [&](CLI::App* s) {
    s->add_option("--rank", c.rank, "free rank")->check(CLI::NonNegativeNumber);
    s->add_option("--factors", c.factors, "cyclic factor orders m1,m2,...");
  };
  {
    auto* s = leaf(group, "derive", "Fox derivatives of a word", group_derive);
    alphabet_opts(s);
    s->add_option("--word", c.word, "word, e.g. \"g1 g2^-1 a1^2\"");
    s->add_option("--gen", c.gen, "index: 2, g2 or a1 (default: all)");
  }
  {
    auto* s = leaf(group, "schumann", "v in [N,N] via derivatives", group_schumann);
    alphabet_opts(s);
    s->add_option("--word", c.word)->required();
    s->add_option("--quotient", c.quotient, "trivial|identity|abelian|nilpotent:c|finite:ORDERS/IMAGES");
  }
  {
    auto* s = leaf(group, "theorem1", "membership in (F_K∩N)^F M", group_theorem1);
    alphabet_opts(s);
    s->add_option("--word", c.word)->required();
    s->add_option("--quotient", c.quotient);
    s->add_option("--K", c.K, "indices, e.g. 1,a1");
    s->add_option("--bound", c.bound, "witness search bound");
  }
  {
    auto* s = leaf(group, "gamma-criterion", "membership in <F_K, gamma_n+1>", group_gamma);
    alphabet_opts(s);
    s->add_option("--word", c.word)->required();
    s->add_option("--K", c.K);
    s->add_option("--n", c.n)->check(CLI::PositiveNumber);
    s->add_option("--cutoff", c.cutoff);
  }
  {
    auto* s = leaf(group, "transversal", "Schreier transversal and generators", group_transversal);
    alphabet_opts(s);
    s->add_option("--quotient", c.quotient);
    s->add_option("--style", c.style, "shortlex|alphabeta");
  }
  {
    auto* s = leaf(group, "conjcrit", "conjugacy criterion mod gamma_i+1", group_conjcrit);
    s->add_option("--rank", c.rank)->check(CLI::PositiveNumber);
    s->add_option("--relator", c.relator)->required();
    s->add_option("--level", c.level, "i (default: the gamma weight of r)");
    s->add_option("--cutoff", c.cutoff, "cutoff used to find the weight");
    s->add_option("--bound", c.bound, "word search bound L");
  }

  CLI::App* lie = app.add_subcommand("lie", "free Lie algebras");
  lie->require_subcommand(1);
  lie->fallthrough();
  auto ideal_opts = [&](CLI::App* s) {
    s->add_option("--ideal", c.ideal, "power:m");
    s->add_option("--cutoff", c.cutoff)->check(CLI::PositiveNumber);
  };
  {
    auto* s = leaf(lie, "derive", "Lie Fox derivatives", lie_derive);
    s->add_option("--rank", c.rank)->check(CLI::PositiveNumber);
    s->add_option("--expr", c.expr)->required();
    s->add_flag("--assoc", c.assoc, "read --expr as a polynomial in x1..xn");
    s->add_option("--ideal", c.derive_ideal, "power:m, or none");
    s->add_option("--cutoff", c.cutoff);
  }
  {
    auto* s = leaf(lie, "decompose", "v = v0 + v1 + [N,N] decomposition", lie_decompose);
    s->add_option("--rank", c.rank)->check(CLI::PositiveNumber);
    ideal_opts(s);
    s->add_option("--K", c.K);
    s->add_option("--expr", c.expr)->required();
  }
  {
    auto* s = leaf(lie, "kharlampovich", "[N,N] membership via derivatives", lie_kharlampovich);
    s->add_option("--rank", c.rank)->check(CLI::PositiveNumber);
    ideal_opts(s);
    s->add_option("--expr", c.expr);
    s->add_option("--samples", c.samples, "random sweep size (uses --seed)");
  }
  {
    auto* s = leaf(lie, "freiheit", "freedom theorem verifier", lie_freiheit);
    s->add_option("--rank", c.rank)->check(CLI::PositiveNumber);
    s->add_option("--spec", c.spec, "m1,m2,... (default: cutoff)");
    s->add_option("--root", c.root, "F|power:m");
    s->add_option("--relator", c.relator)->required();
    s->add_option("--cutoff", c.cutoff)->check(CLI::PositiveNumber);
  }
  {
    auto* s = leaf(lie, "dims", "Witt dimension", lie_dims);
    s->add_option("--rank", c.rank)->check(CLI::PositiveNumber);
    s->add_option("--degree", c.degree)->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }

  Outcome result;
  try {
    for (auto& [sub, fn] : leaves)
      if (sub->parsed()) result = fn(c);
  } catch (const ParseError& e) {
    Json j = {{"error", e.what()}, {"kind", "parse"}, {"position", e.position()}};
    out << j.dump(2) << "\n";
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    Json j = {{"error", e.what()}, {"kind", "precondition"}};
    out << j.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (!c.output.empty()) {
    std::ofstream f(c.output);
    if (!f) {
      err << "cannot write " << c.output << "\n";
      return 2;
    }
    f << result.doc.dump(2) << "\n";
  } else {
    out << result.doc.dump(2) << "\n";
  }
  err << result.summary << "\n";
  return result.code;
}

}  // namespace fox::cli
