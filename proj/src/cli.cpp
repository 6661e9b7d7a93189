#include "canontop/cli.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>

#include <CLI11.hpp>

#include "canontop/json_io.hpp"

namespace canontop::cli {

namespace {

using json_io::Json;

struct Options {
  std::string ring = "free";
  std::string epsilon = "1/10";
  std::string group = "Z";
  std::string fixture;
  std::uint64_t seed = 0;
  std::uint64_t budget = 1'000'000;
};

struct Outcome {
  Json report;
  bool pass = true;
  std::string summary;
};

Json header(const std::string& command) { return Json{{"schema", "canontop." + command + "/1"}}; }

Json load_fixture(const Options& o) {
  if (o.fixture.empty()) throw std::invalid_argument("--fixture is required");
  return json_io::read_file(o.fixture);
}

CoeffGroup coeff_group_flag(const std::string& text) {
  if (text.starts_with("table:")) return json_io::coeff_group_from(json_io::read_file(text.substr(6)));
  return json_io::coeff_group_from(Json(text));
}

Coeff first_non_identity(const CoeffGroup& g) { return g.is_integers() ? Coeff(1) : g.non_identity_elements().front(); }

std::string failed_list(const VerificationReport& r) {
  std::string s;
  for (const auto& f : r.failures()) s += (s.empty() ? "" : ", ") + f;
  return s;
}

Outcome ring_identities(const Options& o) {
  RingPtr ring = RingDescriptor::parse(o.ring);
  EmbeddingReport rep = verify_embedding_identities(ring, o.seed);
  Outcome out{header("ring-identities"), rep.all_pass(), {}};
  out.report["seed"] = o.seed;
  Json body = json_io::to_json(rep);
  for (auto& [k, v] : body.items()) out.report[k] = v;
  std::string failed;
  for (const auto& r : rep.identities)
    if (!r.pass) failed += (failed.empty() ? "" : ", ") + r.name;
  for (const auto& r : rep.inverses)
    if (!r.pass) failed += (failed.empty() ? "" : ", ") + r.name + " inverse";
  out.summary = rep.ring + (failed.empty() ? ": all identities hold" : ": failed " + failed);
  return out;
}

Outcome separation(const Options& o, bool epsilon_given, bool group_given) {
  Json fx = o.fixture.empty() ? Json::object() : json_io::read_file(o.fixture);
  if (group_given && fx.contains("group")) throw std::invalid_argument("give the group either by flag or by fixture");
  CoeffGroup coeffs = fx.contains("group") ? json_io::coeff_group_from(fx.at("group")) : coeff_group_flag(o.group);
  Coeff a = fx.contains("a") ? json_io::coeff_from(fx.at("a")) : first_non_identity(coeffs);
  if (epsilon_given && fx.contains("spec")) throw std::invalid_argument("give the radius either by flag or by fixture");
  NbhdSpec spec = fx.contains("spec") ? json_io::nbhd_spec_from(coeffs, fx.at("spec"))
                                      : NbhdSpec(Rational::parse(o.epsilon));

  SeparationBundle b = fx.contains("bundle") ? json_io::bundle_from(coeffs, fx.at("bundle"))
                                             : build_separation_witness(coeffs, a, spec);
  VerificationReport rep = verify_separation_witness(b, spec, a);

  Outcome out{header("separation-witness"), rep.all_pass(), {}};
  out.report["group"] = json_io::coeff_group_to_json(coeffs);
  out.report["a"] = json_io::coeff_to_json(a);
  out.report["spec"] = json_io::to_json(spec);
  out.report["bundle"] = json_io::to_json(b);
  out.report["report"] = json_io::to_json(rep);
  out.summary = "n = " + std::to_string(b.n) + ", total " + to_string(b.total) +
                (rep.all_pass() ? "" : "; failed " + failed_list(rep));
  return out;
}

Outcome cantor(const Options& o) {
  CantorInstance inst;
  Json fx = Json::object();
  if (!o.fixture.empty()) {
    fx = json_io::read_file(o.fixture);
    inst = json_io::cantor_instance_from(fx.contains("instance") ? fx.at("instance") : fx);
  } else {
    std::mt19937_64 rng(o.seed);
    inst = random_cantor_instance(rng);
  }
  CantorWitness w = fx.contains("witness") ? json_io::cantor_witness_from(fx.at("witness")) : cantor_claim_witness(inst);
  VerificationReport rep = verify_cantor_witness(inst, w);
  Outcome out{header("cantor-claim"), rep.all_pass(), {}};
  out.report["instance"] = json_io::to_json(inst);
  out.report["witness"] = json_io::to_json(w);
  out.report["report"] = json_io::to_json(rep);
  out.summary = "triple (" + std::to_string(w.triple[0]) + "," + std::to_string(w.triple[1]) + "," +
                std::to_string(w.triple[2]) + ")" + (rep.all_pass() ? ", witness verified" : "; failed " + failed_list(rep));
  return out;
}

AmbientGroup ambient_from(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "homeo") return AmbientGroup::homeomorphisms();
  return AmbientGroup::finite(json_io::finite_group_from(j));
}

Outcome bergman(const Options& o) {
  Json fx = load_fixture(o);
  AmbientGroup g = ambient_from(fx.at("group"));
  Closure mode = json_io::closure_from(fx.value("mode", Json("group")));
  QTuple tuple = json_io::qtuple_from(g, fx.at("tuple"));
  Element element = json_io::element_from(g, fx.at("element"));

  Outcome out{header("bergman-member"), true, {}};
  out.report["group"] = fx.at("group");
  out.report["mode"] = json_io::closure_name(mode);
  out.report["tuple"] = json_io::to_json(tuple);
  out.report["element"] = json_io::to_json(element);
  if (fx.contains("witness")) {
    WordWitness w = json_io::witness_from(g, fx.at("witness"));
    bool ok = verify_word_witness(g, tuple, mode, w, element);
    out.report["witness"] = json_io::to_json(w);
    out.report["verified"] = ok;
    out.pass = ok;
    out.summary = ok ? "witness verified" : "witness rejected";
    return out;
  }
  if (!g.is_finite()) throw std::invalid_argument("membership search needs a finite group; supply a witness");
  auto w = u_set_member(g.finite_group(), tuple, mode, std::get<int>(element));
  out.report["member"] = w.has_value();
  if (w) {
    bool ok = verify_word_witness(g, tuple, mode, *w, element);
    out.report["witness"] = json_io::to_json(*w);
    out.report["verified"] = ok;
    out.pass = ok;
    out.summary = "member, witness of length " + std::to_string(w->size()) + (ok ? "" : " FAILED verification");
  } else {
    out.summary = "not a member";
  }
  return out;
}

bool is_normal(const FiniteGroup& g, const std::vector<int>& s) {
  std::vector<bool> mask(static_cast<std::size_t>(g.order()), false);
  for (int x : s) mask[static_cast<std::size_t>(x)] = true;
  return g.is_normal_subgroup(mask);
}

// Contains e, closed under products and conjugation.
bool is_conjugation_closed_monoid(const FiniteGroup& g, const std::vector<int>& s) {
  auto in = [&](int x) { return std::binary_search(s.begin(), s.end(), x); };
  if (!in(g.identity())) return false;
  for (int a : s) {
    for (int b : s)
      if (!in(g.mul(a, b))) return false;
    for (int c = 0; c < g.order(); ++c)
      if (!in(g.conjugate(c, a))) return false;
  }
  return true;
}

Outcome minimal_nbhd(const Options& o) {
  Json fx = load_fixture(o);
  GroupPtr g = json_io::finite_group_from(fx.at("group"));
  Closure mode = json_io::closure_from(fx.value("mode", Json("group")));
  std::vector<int> subset;
  for (const auto& v : fx.at("subset")) {
    int x = v.get<int>();
    if (!g->contains(x)) throw std::invalid_argument("subset member out of range");
    subset.push_back(x);
  }
  auto result = minimal_nbhd_finite(g, subset, mode);
  bool contains = std::all_of(subset.begin(), subset.end(),
                              [&](int x) { return std::binary_search(result.begin(), result.end(), x); });
  bool closed = mode == Closure::group ? is_normal(*g, result) : is_conjugation_closed_monoid(*g, result);
  Outcome out{header("minimal-nbhd"), contains && closed, {}};
  out.report["group"] = fx.at("group");
  out.report["mode"] = json_io::closure_name(mode);
  out.report["subset"] = subset;
  out.report["result"] = result;
  Json labels = Json::array();
  for (int x : result) labels.push_back(g->label(x));
  out.report["labels"] = labels;
  out.report["contains_subset"] = contains;
  out.report[mode == Closure::group ? "normal_subgroup" : "conjugation_closed_monoid"] = closed;
  out.summary = std::to_string(result.size()) + " of " + std::to_string(g->order()) + " elements";
  return out;
}

Outcome orbits_cmd(const Options& o) {
  Json fx = load_fixture(o);
  FiniteAction action = json_io::action_from(fx.at("action"));
  std::vector<int> fixed;
  if (fx.contains("fixed"))
    for (const auto& v : fx.at("fixed")) {
      int x = v.get<int>();
      if (x < 0 || x >= action.points()) throw std::invalid_argument("fixed point out of range");
      fixed.push_back(x);
    }
  auto orb = orbits(action, fixed);
  Outcome out{header("orbits"), true, {}};
  out.report["points"] = action.points();
  out.report["group_order"] = action.group()->order();
  out.report["fixed"] = fixed;
  out.report["stabilizer_order"] = stabilizer(action, fixed).size();
  out.report["orbits"] = orb;
  out.summary = std::to_string(orb.size()) + " orbits";
  return out;
}

Outcome check_tau(const Options& o) {
  Json fx = load_fixture(o);
  FiniteAction action = json_io::action_from(fx.at("action"));
  std::vector<std::vector<int>> kernels;
  if (fx.contains("kernel")) {
    std::vector<int> k;
    for (const auto& v : fx.at("kernel")) k.push_back(v.get<int>());
    std::sort(k.begin(), k.end());
    kernels.push_back(k);
  } else {
    kernels = normal_subgroups(*action.group());
  }
  Outcome out{header("check-tau"), true, {}};
  Json results = Json::array();
  std::size_t failed = 0;
  for (const auto& k : kernels) {
    TauReport rep = check_tau_remark(FiniteTopGroup(action.group(), k), action);
    Json item{{"kernel", k}};
    Json body = json_io::to_json(rep);
    for (auto& [key, v] : body.items()) item[key] = v;
    results.push_back(item);
    if (!rep.all_pass()) ++failed;
  }
  out.pass = failed == 0;
  out.report["points"] = action.points();
  out.report["group_order"] = action.group()->order();
  out.report["topologies"] = results;
  out.summary = std::to_string(kernels.size()) + " topologies, " + std::to_string(failed) + " failing";
  return out;
}

Outcome count_orbits(const Options& o) {
  Json fx = load_fixture(o);
  FiniteAction action = json_io::action_from(fx.at("action"));
  int n = fx.at("n").get<int>();
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  auto count = orbit_count_power(action, n, o.budget);
  Outcome out{header("count-orbits"), true, {}};
  out.report["points"] = action.points();
  out.report["n"] = n;
  out.report["orbits"] = count;
  out.summary = std::to_string(count) + " orbits on " + std::to_string(n) + "-tuples";
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks canonical topologies on groups, actions and rings", "canontop"};
  app.require_subcommand(1, 1);
  Options o;

  auto* ring = app.add_subcommand("verify-ring-identities", "GL3 embedding identities over a ring");
  ring->add_option("--ring", o.ring, "free | zmod:N | mat:D:zmod:N");
  ring->add_option("--seed", o.seed);

  auto* sep = app.add_subcommand("separation-witness", "a_{1/3} - a_{2/3} in every ball-type neighbourhood");
  auto* eps_opt = sep->add_option("--epsilon", o.epsilon, "ball radius p/q");
  auto* grp_opt = sep->add_option("--group", o.group, "Z | Z2 | S3 | table:FILE");
  sep->add_option("--fixture", o.fixture);

  auto* cantor_cmd = app.add_subcommand("cantor-claim", "permutation flipping a pattern on Cantor space");
  cantor_cmd->add_option("--fixture", o.fixture);
  cantor_cmd->add_option("--seed", o.seed);

  auto* member = app.add_subcommand("bergman-member", "membership in U((S_q)) with a witness word");
  member->add_option("--fixture", o.fixture)->required();

  auto* minimal = app.add_subcommand("minimal-nbhd", "smallest U-set of a conjugation-invariant family");
  minimal->add_option("--fixture", o.fixture)->required();

  auto* orb = app.add_subcommand("orbits", "orbits of a point stabilizer");
  orb->add_option("--fixture", o.fixture)->required();

  auto* tau = app.add_subcommand("check-tau", "exhaustive check of the orbit topology");
  tau->add_option("--fixture", o.fixture)->required();

  auto* count = app.add_subcommand("count-orbits", "orbits of G on n-tuples");
  count->add_option("--fixture", o.fixture)->required();
  count->add_option("--budget", o.budget);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  Outcome result;
  try {
    if (sub == ring) result = ring_identities(o);
    else if (sub == sep) result = separation(o, eps_opt->count() > 0, grp_opt->count() > 0);
    else if (sub == cantor_cmd) result = cantor(o);
    else if (sub == member) result = bergman(o);
    else if (sub == minimal) result = minimal_nbhd(o);
    else if (sub == orb) result = orbits_cmd(o);
    else if (sub == tau) result = check_tau(o);
    else result = count_orbits(o);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::range_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: malformed fixture: " << e.what() << "\n";
    return kExitUsage;
  }

  result.report["pass"] = result.pass;
  out << result.report.dump(2) << "\n";
  err << sub->get_name() << ": " << (result.pass ? "PASS" : "FAIL") << " (" << result.summary << ")\n";
  return result.pass ? kExitPass : kExitFailed;
}

}  // namespace canontop::cli
