#include "canontop/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace canontop::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

long long integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<long long>();
}

int small_int(const Json& j, const char* what) {
  long long v = integer(j, what);
  if (v < -(1LL << 30) || v > (1LL << 30)) bad(std::string(what) + " out of range");
  return static_cast<int>(v);
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) out.push_back(small_int(v, what));
  return out;
}

std::vector<std::vector<int>> int_grid(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) out.push_back(int_list(row, what));
  return out;
}

}  // namespace

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) bad(path + " is not valid JSON");
  return j;
}

Json to_json(const Rational& r) { return r.str(); }

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad("rational must be a \"p/q\" string");
  return Rational::parse(j.get<std::string>());
}

Json to_json(const PLHomeo& u) {
  Json a = Json::array();
  for (const auto& b : u.breakpoints()) a.push_back(Json::array({to_json(b.x), to_json(b.y)}));
  return a;
}

PLHomeo pl_from(const Json& j) {
  const Json& pts = j.is_object() ? field(j, "breakpoints") : j;
  if (!pts.is_array()) bad("breakpoints must be an array of [x, y] pairs");
  std::vector<PLHomeo::Breakpoint> out;
  for (const auto& p : pts) {
    if (!p.is_array() || p.size() != 2) bad("breakpoint must be an [x, y] pair");
    out.push_back({rational_from(p[0]), rational_from(p[1])});
  }
  return PLHomeo(out);
}

GroupPtr finite_group_from(const Json& j) {
  if (j.is_string()) return named_group(j.get<std::string>()).group;
  std::vector<std::string> labels;
  if (j.contains("labels"))
    for (const auto& l : j.at("labels")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  return std::make_shared<const FiniteGroup>(int_grid(field(j, "table"), "table"), labels);
}

Json finite_group_to_json(const FiniteGroup& g) {
  Json labels = Json::array();
  for (int a = 0; a < g.order(); ++a) labels.push_back(g.label(a));
  return Json{{"table", g.table()}, {"labels", labels}};
}

CoeffGroup coeff_group_from(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "Z") return CoeffGroup::integers();
  return CoeffGroup::finite(finite_group_from(j));
}

Json coeff_group_to_json(const CoeffGroup& g) {
  if (g.is_integers()) return "Z";
  return finite_group_to_json(*g.finite_group());
}

Coeff coeff_from(const Json& j) {
  if (j.is_number_integer()) return Coeff(j.get<long>());
  if (j.is_string()) {
    Coeff c;
    if (c.set_str(j.get<std::string>(), 10) != 0) bad("malformed coefficient " + j.get<std::string>());
    return c;
  }
  bad("coefficient must be an integer");
}

Json coeff_to_json(const Coeff& c) {
  if (c.fits_slong_p()) return c.get_si();
  return c.get_str();
}

FiniteAction action_from(const Json& j) {
  if (j.contains("named")) return FiniteAction::from_permutations(named_group(field(j, "named").get<std::string>()));
  if (j.contains("generators"))
    return FiniteAction::from_permutations(
        generate_permutation_group(int_grid(j.at("generators"), "generators"), small_int(field(j, "degree"), "degree")));
  GroupPtr g = finite_group_from(field(j, "group"));
  GroupPtr points = j.contains("point_group") ? finite_group_from(j.at("point_group")) : nullptr;
  return FiniteAction(g, int_grid(field(j, "table"), "table"), points);
}

Json to_json(const RationalSum& y) {
  Json a = Json::array();
  for (const auto& [i, c] : y.terms()) a.push_back(Json{{"at", to_json(i)}, {"coeff", coeff_to_json(c)}});
  return a;
}

RationalSum rational_sum_from(const CoeffGroup& g, const Json& j) {
  if (!j.is_array()) bad("formal sum must be an array of terms");
  RationalSum y(g);
  for (const auto& t : j) y.add_term(rational_from(field(t, "at")), coeff_from(field(t, "coeff")));
  return y;
}

Json to_json(const NatSum& y) {
  Json a = Json::array();
  for (const auto& [i, c] : y.terms()) a.push_back(Json{{"at", i}, {"coeff", coeff_to_json(c)}});
  return a;
}

NatSum nat_sum_from(const CoeffGroup& g, const Json& j) {
  if (!j.is_array()) bad("formal sum must be an array of terms");
  NatSum y(g);
  for (const auto& t : j) {
    long long at = integer(field(t, "at"), "index");
    if (at < 0) bad("index must be a natural number");
    y.add_term(static_cast<Nat>(at), coeff_from(field(t, "coeff")));
  }
  return y;
}

Json to_json(const Element& e) {
  if (const int* g = std::get_if<int>(&e)) return *g;
  return to_json(std::get<PLHomeo>(e));
}

Element element_from(const AmbientGroup& g, const Json& j) {
  Element e = g.is_finite() ? Element(small_int(j, "element")) : Element(pl_from(j));
  g.check_kind(e);
  return e;
}

Json to_json(const SetSpec& s) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SetSpec::Explicit>) {
          return Json{{"explicit", v.members}};
        } else if constexpr (std::is_same_v<T, SetSpec::Ball>) {
          return Json{{"ball", to_json(v.radius)}};
        } else if constexpr (std::is_same_v<T, SetSpec::Star>) {
          return Json{{"star", to_json(spec_of(v.inner))}};
        } else if constexpr (std::is_same_v<T, SetSpec::Sharp>) {
          return Json{{"sharp", to_json(spec_of(v.inner))}};
        } else {
          Json listed = Json::array();
          for (const auto& [c, spec] : v.listed) listed.push_back(Json{{"conjugator", to_json(c)}, {"set", to_json(spec)}});
          return Json{{"conjugated", Json{{"listed", listed}, {"default", to_json(spec_of(v.fallback))}}}};
        }
      },
      s.node().value);
}

SetSpec set_spec_from(const AmbientGroup& g, const Json& j) {
  if (!j.is_object() || j.size() != 1) bad("set spec must be an object with exactly one key");
  if (j.contains("explicit")) {
    if (!g.is_finite()) bad("explicit subsets need a finite group");
    auto members = int_list(j.at("explicit"), "explicit member");
    for (int m : members)
      if (!g.finite_group()->contains(m)) bad("explicit member " + std::to_string(m) + " out of range");
    return SetSpec::explicit_subset(members);
  }
  if (j.contains("ball")) {
    if (g.is_finite()) bad("balls need the homeomorphism group");
    return SetSpec::ball(rational_from(j.at("ball")));
  }
  if (j.contains("star")) return SetSpec::star(set_spec_from(g, j.at("star")));
  if (j.contains("sharp")) return SetSpec::sharp(set_spec_from(g, j.at("sharp")));
  if (j.contains("conjugated")) {
    const Json& c = j.at("conjugated");
    std::vector<std::pair<Element, SetSpec>> listed;
    if (c.contains("listed"))
      for (const auto& item : c.at("listed"))
        listed.emplace_back(element_from(g, field(item, "conjugator")), set_spec_from(g, field(item, "set")));
    return SetSpec::conjugated(std::move(listed), set_spec_from(g, field(c, "default")));
  }
  bad("unknown set spec " + j.dump());
}

Json to_json(const QTuple& t) {
  Json ex = Json::array();
  for (const auto& [q, s] : t.exceptions()) ex.push_back(Json{{"q", to_json(q)}, {"set", to_json(s)}});
  return Json{{"default", to_json(t.fallback())}, {"exceptions", ex}};
}

QTuple qtuple_from(const AmbientGroup& g, const Json& j) {
  std::map<Rational, SetSpec> ex;
  if (j.contains("exceptions"))
    for (const auto& item : j.at("exceptions")) {
      Rational q = rational_from(field(item, "q"));
      if (ex.contains(q)) bad("duplicate exception at q = " + q.str());
      ex.emplace(q, set_spec_from(g, field(item, "set")));
    }
  return QTuple(set_spec_from(g, field(j, "default")), std::move(ex));
}

namespace {

const char* mode_name(FactorMode m) {
  switch (m) {
    case FactorMode::plain:
      return "plain";
    case FactorMode::inverse:
      return "inverse";
    case FactorMode::identity:
      return "identity";
  }
  return "plain";
}

}  // namespace

Json to_json(const WordWitness& w) {
  Json a = Json::array();
  for (const auto& s : w) a.push_back(Json{{"q", to_json(s.q)}, {"factor", to_json(s.factor)}, {"mode", mode_name(s.mode)}});
  return a;
}

WordWitness witness_from(const AmbientGroup& g, const Json& j) {
  if (!j.is_array()) bad("witness must be an array of steps");
  WordWitness w;
  for (const auto& s : j) {
    std::string mode = field(s, "mode").get<std::string>();
    FactorMode m = mode == "plain"     ? FactorMode::plain
                   : mode == "inverse" ? FactorMode::inverse
                   : mode == "identity"
                       ? FactorMode::identity
                       : (bad("unknown factor mode " + mode), FactorMode::plain);
    w.push_back({rational_from(field(s, "q")), element_from(g, field(s, "factor")), m});
  }
  return w;
}

Closure closure_from(const Json& j) {
  std::string s = j.get<std::string>();
  if (s == "group") return Closure::group;
  if (s == "semigroup") return Closure::semigroup;
  bad("mode must be \"group\" or \"semigroup\"");
}

std::string closure_name(Closure c) { return c == Closure::group ? "group" : "semigroup"; }

Json to_json(const NbhdSpec& s) {
  Json radii = Json::array();
  for (const auto& [key, r] : s.radii())
    radii.push_back(Json{{"h", to_json(key.first)}, {"q", to_json(key.second)}, {"radius", to_json(r)}});
  return Json{{"default", to_json(s.fallback())}, {"radii", radii}};
}

NbhdSpec nbhd_spec_from(const CoeffGroup& g, const Json& j) {
  std::map<NbhdSpec::Key, Rational> radii;
  if (j.contains("radii"))
    for (const auto& item : j.at("radii"))
      radii[{rational_sum_from(g, field(item, "h")), rational_from(field(item, "q"))}] =
          rational_from(field(item, "radius"));
  return NbhdSpec(rational_from(field(j, "default")), std::move(radii));
}

Json to_json(const SeparationBundle& b) {
  return Json{{"n", b.n},
              {"epsilon", to_json(b.epsilon)},
              {"h", to_json(b.h)},
              {"h_prime", to_json(b.h_prime)},
              {"u0", to_json(b.u0)},
              {"u1", to_json(b.u1)},
              {"u0_prime", to_json(b.u0_prime)},
              {"u1_prime", to_json(b.u1_prime)},
              {"v1", to_json(b.v1)},
              {"v2", to_json(b.v2)},
              {"total", to_json(b.total)}};
}

SeparationBundle bundle_from(const CoeffGroup& g, const Json& j) {
  SeparationBundle b;
  b.n = static_cast<long>(integer(field(j, "n"), "n"));
  b.epsilon = rational_from(field(j, "epsilon"));
  b.h = rational_sum_from(g, field(j, "h"));
  b.h_prime = rational_sum_from(g, field(j, "h_prime"));
  b.u0 = pl_from(field(j, "u0"));
  b.u1 = pl_from(field(j, "u1"));
  b.u0_prime = pl_from(field(j, "u0_prime"));
  b.u1_prime = pl_from(field(j, "u1_prime"));
  b.v1 = rational_sum_from(g, field(j, "v1"));
  b.v2 = rational_sum_from(g, field(j, "v2"));
  b.total = rational_sum_from(g, field(j, "total"));
  return b;
}

namespace {

Json triple_json(const Triple& t) { return Json::array({t[0], t[1], t[2]}); }

Triple triple_from(const Json& j) {
  auto v = int_list(j, "triple entry");
  if (v.size() != 3) bad("triple must have three entries");
  return {v[0], v[1], v[2]};
}

Json map_json(const std::map<Nat, Nat>& m) {
  Json a = Json::array();
  for (const auto& [d, r] : m) a.push_back(Json::array({d, r}));
  return a;
}

std::map<Nat, Nat> map_from(const Json& j) {
  if (!j.is_array()) bad("map must be an array of [from, to] pairs");
  std::map<Nat, Nat> m;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) bad("map entry must be a [from, to] pair");
    long long a = integer(p[0], "point"), b = integer(p[1], "point");
    if (a < 0 || b < 0) bad("points must be natural numbers");
    if (!m.emplace(static_cast<Nat>(a), static_cast<Nat>(b)).second) bad("repeated point " + std::to_string(a));
  }
  return m;
}

}  // namespace

Json to_json(const CantorInstance& inst) {
  Json alphas = Json::array();
  for (int i = 0; i < 8; ++i) {
    Triple t{(i >> 2) & 1, (i >> 1) & 1, i & 1};
    alphas.push_back(Json{{"triple", triple_json(t)}, {"map", map_json(inst.alphas[static_cast<std::size_t>(i)])}});
  }
  return Json{{"alphas", alphas}, {"x", to_json(inst.x)}};
}

CantorInstance cantor_instance_from(const Json& j) {
  CantorInstance inst;
  if (j.contains("alphas"))
    for (const auto& a : j.at("alphas")) {
      Triple t = triple_from(field(a, "triple"));
      for (int v : t)
        if (v != 0 && v != 1) bad("triple entries must be 0 or 1");
      inst.alphas[static_cast<std::size_t>(triple_index(t))] = map_from(field(a, "map"));
    }
  inst.x = nat_sum_from(inst.x.group(), field(j, "x"));
  return inst;
}

Json to_json(const CantorWitness& w) {
  Json shift = Json::array();
  for (auto s : w.eta.shift()) shift.push_back(s);
  return Json{{"triple", triple_json(w.triple)},
              {"eta", Json{{"window", map_json(w.eta.window())}, {"threshold", w.eta.threshold()}, {"shift", shift}}}};
}

CantorWitness cantor_witness_from(const Json& j) {
  CantorWitness w;
  w.triple = triple_from(field(j, "triple"));
  const Json& e = field(j, "eta");
  std::array<std::int64_t, 3> shift{0, 0, 0};
  const Json& s = field(e, "shift");
  if (!s.is_array() || s.size() != 3) bad("shift must have three entries");
  for (std::size_t r = 0; r < 3; ++r) shift[r] = integer(s[r], "shift");
  long long threshold = integer(field(e, "threshold"), "threshold");
  if (threshold < 0) bad("threshold must be a natural number");
  w.eta = TailShiftPerm(map_from(field(e, "window")), static_cast<Nat>(threshold), shift);
  return w;
}

Json to_json(const VerificationReport& r) {
  Json clauses = Json::array();
  for (const auto& c : r.clauses) {
    Json item{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    clauses.push_back(item);
  }
  return Json{{"pass", r.all_pass()}, {"clauses", clauses}};
}

Json to_json(const IdentityResult& r) {
  Json j{{"name", r.name}, {"statement", r.statement}, {"pass", r.pass}, {"checked", r.checked}};
  if (!r.pass) j["counterexample"] = r.counterexample;
  return j;
}

Json to_json(const EmbeddingReport& r) {
  Json ids = Json::array(), inv = Json::array();
  for (const auto& i : r.identities) ids.push_back(to_json(i));
  for (const auto& i : r.inverses) inv.push_back(to_json(i));
  return Json{{"ring", r.ring},      {"symbolic", r.symbolic},
              {"pass", r.all_pass()}, {"identities", ids},
              {"inverses", inv},     {"diagnostics", Json::array({to_json(r.i5_signed)})}};
}

Json to_json(const TauReport& r) {
  auto clause = [](const TauClause& c) { return Json{{"pass", c.pass}, {"detail", c.detail}}; };
  return Json{{"pass", r.all_pass()},
              {"basis", clause(r.basis)},
              {"continuity", clause(r.continuity)},
              {"orbits", clause(r.orbits)},
              {"separation", clause(r.separation)},
              {"basis_size", r.basis_size},
              {"open_sets", r.open_sets},
              {"stabilizers_closed", r.stabilizers_closed},
              {"t1", r.t1},
              {"hausdorff", r.hausdorff},
              {"discrete", r.discrete}};
}

}  // namespace canontop::json_io
