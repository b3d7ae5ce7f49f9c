#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nsbench/nsbench.hpp"

using nlohmann::json;
using namespace nsbench;

namespace {

struct Globals {
  std::string field = "q";
  std::string out = "json";
  unsigned cap_cube_log = kDefaultCubeLogCap;
  std::size_t cap_system = kDefaultSystemCap;
  std::size_t cap_terms = kDefaultTermCap;
  std::size_t cap_derivatives = kDefaultDerivativeCap;
  std::uint64_t seed = 20240611;

  json caps() const {
    return {{"cube_log", cap_cube_log},
            {"system_entries", cap_system},
            {"terms", cap_terms},
            {"derivatives", cap_derivatives}};
  }
};

/// Thrown by a command once its report is final but the run did not succeed.
struct CommandFailed {
  int code;
};

std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_csv(const json& results) {
  if (results.contains("table") && results["table"].is_array() && !results["table"].empty()) {
    const auto& rows = results["table"];
    std::vector<std::string> keys;
    for (const auto& [k, v] : rows.front().items()) keys.push_back(k);
    for (std::size_t i = 0; i < keys.size(); ++i) std::cout << (i ? "," : "") << keys[i];
    std::cout << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < keys.size(); ++i) {
        std::cout << (i ? "," : "") << (row.contains(keys[i]) ? scalar_text(row[keys[i]]) : "");
      }
      std::cout << "\n";
    }
    return;
  }
  std::cout << "key,value\n";
  for (const auto& [k, v] : results.items()) {
    if (v.is_primitive()) std::cout << k << "," << scalar_text(v) << "\n";
  }
}

void print_text(const ExperimentReport& rep) {
  std::cout << rep.status;
  if (rep.results.contains("summary")) std::cout << ": " << rep.results["summary"].get<std::string>();
  std::cout << "\n";
  for (const auto& [k, v] : rep.results.items()) {
    if (k == "summary") continue;
    const bool flat = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
    if (v.is_primitive() || flat) std::cout << "  " << k << " = " << scalar_text(v) << "\n";
  }
}

void emit(const ExperimentReport& rep, const Globals& g) {
  if (g.out == "csv") {
    print_csv(rep.results);
  } else if (g.out == "text") {
    print_text(rep);
  } else {
    std::cout << rep.to_json().dump(2) << "\n";
  }
}

ParsedInstance load_instance(const std::string& spec, const Globals& g, bool allow_satisfiable = false) {
  auto parsed = parse_instance_spec(spec, Field::parse(g.field), g.cap_cube_log);
  if (!allow_satisfiable) detail::throw_if_satisfiable(parsed.instance);
  return parsed;
}

/// Resolves a side token: an instance group name, a variable prefix, or a comma list of names.
std::vector<Var> resolve_vars(const std::string& token, const Instance* inst, const Polynomial& f) {
  if (inst != nullptr && inst->has_group(token)) return inst->group(token).vars;
  if (token.find(',') == std::string::npos && token.find('_') == std::string::npos) {
    std::vector<Var> out;
    for (Var v : f.variables()) {
      if (var_name(v).rfind(token + "_", 0) == 0) out.push_back(v);
    }
    std::sort(out.begin(), out.end(), canonical_less);
    if (out.empty()) throw InvalidArgument("no variables with prefix '" + token + "'");
    return out;
  }
  std::vector<Var> out;
  for (const auto& name : detail::split(token, ',')) {
    if (!name.empty()) out.push_back(var(name));
  }
  return out;
}

std::vector<Var> resolve_order(const std::string& spec, const Instance* inst, const Polynomial& f) {
  std::vector<Var> out;
  for (const auto& part : detail::split(spec, ';')) {
    const auto vs = resolve_vars(part, inst, f);
    out.insert(out.end(), vs.begin(), vs.end());
  }
  return out;
}

/// The polynomial a dimension or measure command operates on.
struct Target {
  std::optional<ParsedInstance> parsed;
  Polynomial poly;
  std::string what;
};

Target load_target(const std::string& instance, const std::string& poly, const std::string& of, const Globals& g) {
  Target t;
  const Field f = Field::parse(g.field);
  if (!poly.empty()) {
    if (!instance.empty()) throw InvalidArgument("give either --instance or --poly");
    t.poly = Polynomial::parse(poly, f);
    t.what = "poly";
    return t;
  }
  if (instance.empty()) throw InvalidArgument("one of --instance or --poly is required");
  t.parsed = load_instance(instance, g, of != "inverse");
  const Instance& inst = t.parsed->instance;
  t.what = of;
  if (of == "inverse") {
    t.poly = inverse_on_cube(inst.axiom(g.cap_terms), inst.variables(), g.cap_cube_log);
  } else if (of == "axiom") {
    t.poly = inst.axiom(g.cap_terms);
  } else if (of == "core") {
    t.poly = inst.core(g.cap_terms);
  } else {
    throw InvalidArgument("--of must be inverse, axiom or core");
  }
  return t;
}

std::vector<Scalar> parse_scalar_list(const std::string& text, const Field& f) {
  std::vector<Scalar> out;
  for (const auto& s : detail::split(text, ',')) out.push_back(parse_scalar(f, s));
  return out;
}

// ---- gen-instance

struct GenArgs {
  std::string generator;
  std::optional<int> n, d, h, k;
  std::string beta;
  std::string word;
  std::string write;
};

std::string spec_from_gen(const GenArgs& a) {
  if (a.generator.find(':') != std::string::npos) return a.generator;
  const auto req = [&](const std::optional<int>& v, const char* flag) {
    if (!v) throw InvalidArgument(a.generator + " needs --" + flag);
    return std::to_string(*v);
  };
  const auto beta = [&]() {
    if (a.beta.empty()) throw InvalidArgument(a.generator + " needs --beta");
    return a.beta;
  };
  const std::string& gname = a.generator;
  if (gname == "subset-sum" || gname == "q" || gname == "p") return gname + ":" + req(a.n, "n") + "," + beta();
  if (gname == "sym" || gname == "sym-star") return gname + ":" + req(a.d, "d") + "," + req(a.n, "n") + "," + beta();
  if (gname == "ks-word") {
    return gname + ":" + req(a.h, "h") + "," + req(a.d, "d") + "," + req(a.k, "k") + (a.beta.empty() ? "" : "," + a.beta);
  }
  if (gname == "ks") {
    if (a.word.empty()) throw InvalidArgument("ks needs --word");
    return gname + ":" + a.word + (a.beta.empty() ? "" : "," + a.beta);
  }
  throw InvalidArgument("unknown generator '" + gname + "'");
}

void cmd_gen_instance(const GenArgs& a, const Globals& g, ExperimentReport& rep) {
  const auto parsed = load_instance(spec_from_gen(a), g);
  const Instance& inst = parsed.instance;
  rep.instance = inst.metadata();
  const Polynomial ax = inst.axiom(g.cap_terms);
  const std::string text = ax.to_string();
  rep.results = {{"terms", ax.size()}, {"degree", ax.degree()}, {"variables", inst.variables().size()}};
  if (parsed.knapsack) rep.results["word"] = parsed.knapsack->word.entries();
  if (!a.write.empty()) {
    std::ofstream(a.write + ".poly") << text << "\n";
    std::ofstream(a.write + ".json") << inst.metadata().dump(2) << "\n";
    rep.results["files"] = {a.write + ".poly", a.write + ".json"};
  } else {
    rep.results["polynomial"] = text;
  }
  rep.results["summary"] = inst.generator + " with " + std::to_string(inst.variables().size()) + " variables";
}

// ---- interp-inverse

void cmd_interp_inverse(const std::string& spec, bool print, const Globals& g, ExperimentReport& rep) {
  const auto parsed = load_instance(spec, g);
  const Instance& inst = parsed.instance;
  rep.instance = inst.metadata();
  const auto ax = inst.axiom(g.cap_terms);
  const auto vars = inst.variables();
  const Polynomial inv = inverse_on_cube(ax, vars, g.cap_cube_log);
  // second path: ml(inv * axiom) must be 1
  const bool verified = multilinearize(inv * ax) == Polynomial::constant(Scalar::one(inst.field));
  rep.results = {{"degree", inv.degree()}, {"terms", inv.size()}, {"verified", verified}};
  json table = json::array();
  if (print) {
    for (const auto& [m, c] : inv.sorted_terms()) table.push_back({{"monomial", m.to_string()}, {"coefficient", c.to_string()}});
    rep.results["table"] = table;
  }
  rep.results["summary"] = "inverse of degree " + std::to_string(inv.degree()) + " with " + std::to_string(inv.size()) + " terms";
  if (!verified) {
    rep.status = "FAIL";
    throw CommandFailed{kExitFail};
  }
}

// ---- ns-search

void cmd_ns_search(const std::string& spec, int max_degree, bool ml, bool with_cert, const Globals& g,
                   ExperimentReport& rep) {
  const auto parsed = load_instance(spec, g);
  const Instance& inst = parsed.instance;
  rep.instance = inst.metadata();
  const auto reps = search_min_degree(inst, max_degree, ml, g.cap_system);
  json table = json::array();
  std::optional<int> found;
  bool capped = false;
  bool verified = true;
  for (const auto& r : reps) {
    table.push_back({{"degree", r.degree}, {"outcome", to_string(r.outcome)}, {"unknowns", r.unknowns}});
    if (r.outcome == SearchOutcome::Found && !found) {
      found = r.degree;
      verified = verify(*r.certificate);
      if (with_cert) rep.results["certificate"] = r.certificate->to_json();
    }
    capped = capped || r.outcome == SearchOutcome::CapExceeded;
  }
  rep.results["table"] = table;
  rep.results["multilinear_cofactors"] = ml;
  if (found) {
    rep.results["found_degree"] = *found;
    rep.results["verified"] = verified;
    rep.results["summary"] = "refutation found at degree " + std::to_string(*found);
  } else {
    rep.results["summary"] = capped ? "cap exceeded before a refutation was found"
                                    : "no refutation up to degree " + std::to_string(max_degree);
  }
  if (found && !verified) {
    rep.status = "FAIL";
    throw CommandFailed{kExitFail};
  }
  if (capped && !found) {
    rep.status = "CAP_EXCEEDED";
    throw CommandFailed{kExitCapExceeded};
  }
}

// ---- coeff-dim

struct DimArgs {
  std::string instance, poly, of = "inverse", left, right, order, eval;
  std::optional<int> slice;
  bool all_cuts = false;
};

void cmd_coeff_dim(const DimArgs& a, const Globals& g, ExperimentReport& rep) {
  Target t = load_target(a.instance, a.poly, a.of, g);
  const Instance* inst = t.parsed ? &t.parsed->instance : nullptr;
  if (inst) rep.instance = inst->metadata();
  Polynomial f = t.poly;
  if (a.slice) f = f.homogeneous_slice(static_cast<std::uint32_t>(*a.slice));
  rep.results = {{"of", t.what}, {"terms", f.size()}};
  if (a.slice) rep.results["slice"] = *a.slice;
  if (a.all_cuts) {
    if (a.order.empty()) throw InvalidArgument("--all-cuts needs --order");
    const auto order = resolve_order(a.order, inst, t.poly);
    std::vector<std::size_t> cuts;
    const std::size_t w = roabp_width_bound(f, order, &cuts);
    json table = json::array();
    for (std::size_t i = 0; i < cuts.size(); ++i) table.push_back({{"cut", i + 1}, {"rank", cuts[i]}});
    rep.results["table"] = table;
    rep.results["width_bound"] = w;
    rep.results["summary"] = "roABP width bound " + std::to_string(w);
    return;
  }
  if (a.left.empty() || a.right.empty()) throw InvalidArgument("coeff-dim needs --left and --right (or --all-cuts)");
  const VarPartition part{resolve_vars(a.left, inst, t.poly), resolve_vars(a.right, inst, t.poly)};
  const std::size_t dim = coeff_dim(f, part, g.cap_system);
  // second path: the swapped partition gives the transpose
  const std::size_t dim_t = coeff_dim(f, part.swapped(), g.cap_system);
  rep.results["coeff_dim"] = dim;
  rep.results["transpose_agrees"] = dim == dim_t;
  if (!a.eval.empty()) rep.results["eval_dim"] = eval_dim(f, part, parse_scalar_list(a.eval, f.field()));
  rep.results["summary"] = "coefficient dimension " + std::to_string(dim);
  if (dim != dim_t) {
    rep.status = "FAIL";
    throw CommandFailed{kExitFail};
  }
}

// ---- measure

struct MeasureArgs {
  long k = 1;
  long n = 1;
  std::string degrees;
  bool at_most = false;
  std::string instance, poly, of = "inverse", projection = "knapsack";
};

void cmd_measure_residue(const MeasureArgs& a, ExperimentReport& rep) {
  std::vector<long> ds;
  for (const auto& s : detail::split(a.degrees, ',')) ds.push_back(detail::to_int(s, "--degrees"));
  const mpq_class r = residue(a.k, ds);
  rep.results = {{"k", a.k}, {"degrees", ds}, {"residue", r.get_str()}, {"summary", "residue " + r.get_str()}};
}

void cmd_measure_count(const MeasureArgs& a, ExperimentReport& rep) {
  const mpz_class c = count_monomials(a.n, a.k, a.at_most);
  rep.results = {{"n", a.n}, {"k", a.k}, {"at_most", a.at_most}, {"count", c.get_str()},
                 {"summary", std::string(a.at_most ? "M_<=(" : "M(") + std::to_string(a.n) + "," + std::to_string(a.k) + ") = " + c.get_str()}};
}

void cmd_measure_app(const MeasureArgs& a, const Globals& g, ExperimentReport& rep) {
  Target t = load_target(a.instance, a.poly, a.of, g);
  const Instance* inst = t.parsed ? &t.parsed->instance : nullptr;
  if (inst) rep.instance = inst->metadata();
  const Field f = t.poly.field();
  const auto grab = [&](const char* name) { return resolve_vars(name, inst, t.poly); };
  std::optional<Projection> L;
  if (a.projection == "knapsack") {
    L = Projection::knapsack(grab("x"), grab("y"), f);
  } else if (a.projection == "identity") {
    auto vs = t.poly.variables();
    std::sort(vs.begin(), vs.end(), canonical_less);
    L = Projection::identity(vs, f);
  } else {
    throw InvalidArgument("--projection must be knapsack or identity");
  }
  const int k = static_cast<int>(a.k);
  const std::size_t app = app_dim(t.poly, k, *L, g.cap_derivatives);
  const std::size_t partials = span_rank(partials_span(t.poly, k, g.cap_derivatives), g.cap_system);
  rep.results = {{"k", k},          {"projection", a.projection},
                 {"app_dim", app},  {"partials_dim", partials},
                 {"summary", "projected partials dimension " + std::to_string(app)}};
  if (app > partials) {
    rep.status = "FAIL";
    throw CommandFailed{kExitFail};
  }
}

// ---- verify-lemma

void cmd_verify_lemma(const std::string& id, const LemmaParams& p, ExperimentReport& rep) {
  const LemmaEntry* e = find_lemma(id);
  if (e == nullptr) throw InvalidArgument("unknown lemma id '" + id + "'");
  const LemmaResult r = e->run(p);
  rep.results = {{"lemma", id}, {"pass", r.pass}, {"summary", r.summary}, {"data", r.data}};
  if (r.data.contains("coefficient")) rep.results["coefficient"] = r.data["coefficient"];
  if (r.data.contains("sigma_table")) rep.results["table"] = r.data["sigma_table"];
  if (r.data.contains("rows")) rep.results["table"] = r.data["rows"];
  rep.status = r.pass ? "PASS" : "FAIL";
  if (!r.pass) throw CommandFailed{kExitFail};
}

void cmd_list_lemmas(ExperimentReport& rep) {
  json table = json::array();
  for (const auto& e : lemma_registry()) table.push_back({{"id", e.id}, {"description", e.description}});
  rep.results = {{"table", table}, {"summary", std::to_string(table.size()) + " lemma checks"}};
}

// ---- roabp

struct RoabpArgs {
  std::string program, instance, poly, of = "inverse", order;
  int n = 3;
};

void cmd_roabp(const RoabpArgs& a, const Globals& g, ExperimentReport& rep) {
  const Field f = Field::parse(g.field);
  if (!a.program.empty()) {
    const auto xs = var_range("x", a.n);
    Polynomial want(f);
    std::optional<Roabp> prog;
    if (a.program == "prefix-sum") {
      prog = prefix_sum_roabp(xs, f);
      want = Polynomial::sum_of(f, xs);
    } else if (a.program == "product") {
      prog = product_roabp(xs, f);
      want = Polynomial::term(Monomial::product(xs), Scalar::one(f));
    } else {
      throw InvalidArgument("--program must be prefix-sum or product");
    }
    const Polynomial got = prog->expand(g.cap_terms);
    std::vector<std::size_t> cuts;
    const std::size_t bound = roabp_width_bound(got, xs, &cuts);
    const bool ok = got == want && bound <= prog->width();
    rep.results = {{"program", a.program}, {"width", prog->width()}, {"width_bound", bound},
                   {"expanded", got.to_string()}, {"matches", got == want},
                   {"summary", a.program + " program of width " + std::to_string(prog->width())}};
    if (!ok) {
      rep.status = "FAIL";
      throw CommandFailed{kExitFail};
    }
    return;
  }
  DimArgs d;
  d.instance = a.instance;
  d.poly = a.poly;
  d.of = a.of;
  d.order = a.order;
  d.all_cuts = true;
  cmd_coeff_dim(d, g, rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nullstellensatz and IPS experiment toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--field", g.field, "q or fp:<p>")->capture_default_str();
  app.add_option("--out", g.out, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
  app.add_option("--cap-cube-log", g.cap_cube_log, "largest cube dimension enumerated")->capture_default_str();
  app.add_option("--cap-system", g.cap_system, "largest linear system (nonzero entries)")->capture_default_str();
  app.add_option("--cap-terms", g.cap_terms, "largest expanded polynomial (terms)")->capture_default_str();
  app.add_option("--cap-derivatives", g.cap_derivatives, "largest derivative enumeration")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for sampled checks")->capture_default_str();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-instance", "build an instance and print its axiom");
  gen_cmd->set_help_flag("--help", "print this help and exit");
  gen_cmd->add_option("generator", gen.generator, "generator name or full spec")->required();
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--d", gen.d);
  gen_cmd->add_option("--h", gen.h);
  gen_cmd->add_option("--k", gen.k);
  gen_cmd->add_option("--beta", gen.beta);
  gen_cmd->add_option("--word", gen.word, "entries separated by '/'");
  gen_cmd->add_option("--write", gen.write, "write PREFIX.poly and PREFIX.json");

  std::string inv_spec;
  bool inv_print = false;
  auto* inv_cmd = app.add_subcommand("interp-inverse", "multilinear inverse of the axiom on the cube");
  inv_cmd->add_option("--instance", inv_spec)->required();
  inv_cmd->add_flag("--print", inv_print, "list every coefficient");

  std::string ns_spec;
  int ns_max = 3;
  bool ns_ml = false;
  bool ns_cert = false;
  auto* ns_cmd = app.add_subcommand("ns-search", "minimum Nullstellensatz refutation degree");
  ns_cmd->add_option("--instance", ns_spec)->required();
  ns_cmd->add_option("--max-degree", ns_max)->capture_default_str();
  ns_cmd->add_flag("--multilinear", ns_ml, "multilinear cofactors only");
  ns_cmd->add_flag("--certificate", ns_cert, "include the certificate");

  DimArgs dim;
  auto* dim_cmd = app.add_subcommand("coeff-dim", "coefficient dimension under a variable partition");
  dim_cmd->add_option("--instance", dim.instance);
  dim_cmd->add_option("--poly", dim.poly);
  dim_cmd->add_option("--of", dim.of, "inverse, axiom or core")->capture_default_str();
  dim_cmd->add_option("--left", dim.left, "group, prefix or comma list");
  dim_cmd->add_option("--right", dim.right, "group, prefix or comma list");
  dim_cmd->add_option("--slice", dim.slice, "restrict to one homogeneous degree");
  dim_cmd->add_option("--order", dim.order, "variable order; ';' joins groups");
  dim_cmd->add_flag("--all-cuts", dim.all_cuts, "rank at every prefix cut of --order");
  dim_cmd->add_option("--eval-dim", dim.eval, "also report evaluation dimension over this value set");

  MeasureArgs ms;
  auto* m_cmd = app.add_subcommand("measure", "counting and partial-derivative measures");
  m_cmd->require_subcommand(1);
  auto* m_res = m_cmd->add_subcommand("residue", "residue of a degree vector");
  m_res->add_option("--k", ms.k)->required();
  m_res->add_option("--degrees", ms.degrees)->required();
  auto* m_cnt = m_cmd->add_subcommand("count", "number of monomials of degree k in n variables");
  m_cnt->add_option("--n", ms.n)->required();
  m_cnt->add_option("--k", ms.k)->required();
  m_cnt->add_flag("--at-most", ms.at_most);
  auto* m_app = m_cmd->add_subcommand("app", "dimension of projected order-k partials");
  m_app->add_option("--instance", ms.instance);
  m_app->add_option("--poly", ms.poly);
  m_app->add_option("--of", ms.of)->capture_default_str();
  m_app->add_option("--k", ms.k)->capture_default_str();
  m_app->add_option("--projection", ms.projection, "knapsack or identity")->capture_default_str();

  std::string lemma_id;
  bool list = false;
  LemmaParams lp;
  std::string beta;
  std::string word;
  auto* v_cmd = app.add_subcommand("verify-lemma", "run one registered lemma check");
  v_cmd->set_help_flag("--help", "print this help and exit");
  v_cmd->add_option("id", lemma_id);
  v_cmd->add_flag("--list", list, "list lemma ids");
  v_cmd->add_option("--n", lp.n);
  v_cmd->add_option("--d", lp.d);
  v_cmd->add_option("--k", lp.k);
  v_cmd->add_option("--h", lp.h);
  v_cmd->add_option("--beta", beta);
  v_cmd->add_option("--word", word);

  RoabpArgs ra;
  auto* r_cmd = app.add_subcommand("roabp", "roABP programs and width bounds");
  r_cmd->add_option("--program", ra.program, "prefix-sum or product");
  r_cmd->add_option("--n", ra.n)->capture_default_str();
  r_cmd->add_option("--instance", ra.instance);
  r_cmd->add_option("--poly", ra.poly);
  r_cmd->add_option("--of", ra.of)->capture_default_str();
  r_cmd->add_option("--order", ra.order);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  ExperimentReport rep;
  rep.command.assign(argv + 1, argv + argc);
  rep.field = g.field;
  rep.caps = g.caps();
  Stopwatch clock;
  int code = kExitOk;
  try {
    rep.field = Field::parse(g.field).tag();
    if (*gen_cmd) {
      cmd_gen_instance(gen, g, rep);
    } else if (*inv_cmd) {
      cmd_interp_inverse(inv_spec, inv_print, g, rep);
    } else if (*ns_cmd) {
      cmd_ns_search(ns_spec, ns_max, ns_ml, ns_cert, g, rep);
    } else if (*dim_cmd) {
      cmd_coeff_dim(dim, g, rep);
    } else if (*m_res) {
      cmd_measure_residue(ms, rep);
    } else if (*m_cnt) {
      cmd_measure_count(ms, rep);
    } else if (*m_app) {
      cmd_measure_app(ms, g, rep);
    } else if (*v_cmd) {
      lp.field = Field::parse(g.field);
      lp.seed = g.seed;
      lp.log_cap = g.cap_cube_log;
      if (!beta.empty()) lp.beta = beta;
      if (!word.empty()) lp.word = word;
      if (list) {
        cmd_list_lemmas(rep);
      } else {
        if (lemma_id.empty()) throw InvalidArgument("verify-lemma needs an id (or --list)");
        rep.results["lemma"] = lemma_id;
        cmd_verify_lemma(lemma_id, lp, rep);
      }
    } else if (*r_cmd) {
      cmd_roabp(ra, g, rep);
    }
  } catch (const CommandFailed& f) {
    code = f.code;
  } catch (const SatisfiablePoint& e) {
    rep.status = "SATISFIABLE";
    json pt = json::object();
    for (const auto& [name, value] : e.point()) pt[name] = value;
    rep.results["error"] = e.what();
    rep.results["witness"] = pt;
    code = kExitSatisfiable;
  } catch (const CapExceeded& e) {
    rep.status = "CAP_EXCEEDED";
    rep.results["error"] = e.what();
    code = kExitCapExceeded;
  } catch (const InvalidArgument& e) {
    rep.status = "USAGE";
    rep.results["error"] = e.what();
    code = kExitUsage;
  } catch (const ParseError& e) {
    rep.status = "USAGE";
    rep.results["error"] = e.what();
    code = kExitUsage;
  } catch (const std::exception& e) {
    rep.status = "ERROR";
    rep.results["error"] = e.what();
    code = kExitError;
  }
  rep.millis = clock.millis();
  emit(rep, g);
  if (code != kExitOk && rep.results.contains("error")) {
    std::cerr << "nsbench: " << rep.results["error"].get<std::string>() << "\n";
  }
  return code;
}
