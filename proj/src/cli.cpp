#include "caplat/cli.hpp"

#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "caplat/capacity.hpp"
#include "caplat/error.hpp"
#include "caplat/fixtures.hpp"
#include "caplat/frechet.hpp"
#include "caplat/ideal_lattice.hpp"
#include "caplat/problem_io.hpp"
#include "caplat/stochastic.hpp"

namespace caplat {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::string capacity;
  std::string seq;
  std::string at;
  std::string upset;
  std::string mode = "membership";
  std::size_t cap = kDefaultIdealCap;
  bool table = false;
};

struct Context {
  const Options& opt;
  Problem problem;
  int exit_code = 0;

  const Lattice& lattice() const { return *problem.lattice; }

  // The named capacity, or the only one in the file.
  std::pair<std::string, const LatticeFn*> capacity() const {
    const auto& caps = problem.capacities;
    if (!opt.capacity.empty()) {
      auto it = caps.find(opt.capacity);
      if (it == caps.end()) {
        throw UsageError("no capacity named '" + opt.capacity + "'");
      }
      return {it->first, &it->second};
    }
    if (caps.size() != 1) {
      throw UsageError("file has " + std::to_string(caps.size()) +
                       " capacities; pick one with --capacity");
    }
    return {caps.begin()->first, &caps.begin()->second};
  }

  const LatticeFn& psi() const {
    if (!problem.psi) throw UsageError("file has no psi section");
    return *problem.psi;
  }

  std::vector<Element> seq() const {
    if (opt.seq.empty()) throw UsageError("--seq is required");
    return lattice().parse_list(opt.seq);
  }

  std::optional<Element> at() const {
    if (opt.at.empty()) return std::nullopt;
    return lattice().index(opt.at);
  }

  IdealLatticePtr ideals() const {
    return std::make_shared<const IdealLattice>(
        IdealLattice::build(problem.lattice, opt.cap));
  }
};

Json fn_json(const LatticeFn& f) {
  Json out = Json::object();
  for (Element x = 0; x < f.size(); ++x) {
    out[f.lattice().name(x)] = to_string(f[x]);
  }
  return out;
}

Json path_json(const Lattice& L, const std::vector<Element>& path) {
  Json out = Json::array();
  for (Element e : path) out.push_back(L.name(e));
  return out;
}

Json pmf_json(const Extension& ext) {
  Json atoms = Json::array();
  for (const auto& [node, mass] : ext.pmf()) {
    atoms.push_back({{"upset", ext.ideals().label(node)},
                     {"mass", to_string(mass)}});
  }
  return atoms;
}

Json extension_report(const std::string& name, const Extension& ext) {
  return {{"capacity", name},
          {"pmf", pmf_json(ext)},
          {"total_mass", to_string(ext.total_mass())}};
}

Json cmd_validate(Context& ctx) {
  const Lattice& L = ctx.lattice();
  Json covers = Json::array();
  for (const auto& [lo, hi] : L.covers()) {
    covers.push_back({L.name(lo), L.name(hi)});
  }
  Json caps = Json::array();
  for (const auto& [name, fn] : ctx.problem.capacities) caps.push_back(name);
  return {{"elements", L.size()},
          {"bottom", L.name(L.bottom())},
          {"top", L.name(L.top())},
          {"covers", covers},
          {"capacities", caps},
          {"psi", ctx.problem.psi.has_value()}};
}

Json cmd_classify(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  const CapacityClass c = classify(*phi);
  return {{"capacity", name},
          {"monotone", c.is_monotone},
          {"nonnegative", c.is_nonnegative},
          {"capacity_normalized", c.is_capacity},
          {"completely_monotone", c.is_completely_monotone},
          {"completely_alternating", c.is_completely_alternating},
          {"bottom_nonnegative", c.bottom_nonnegative}};
}

Json cmd_mobius_inverse(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  return {{"capacity", name}, {"mobius_inverse", fn_json(mobius_inverse(*phi))}};
}

Json cmd_nabla(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  const Lattice& L = ctx.lattice();
  const Element at = ctx.at().value_or(L.top());
  const std::vector<Element> seq = ctx.seq();
  return {{"capacity", name},
          {"seq", path_json(L, seq)},
          {"at", L.name(at)},
          {"value", to_string(nabla(*phi, Subset(seq), at))}};
}

Json cmd_upsets(Context& ctx) {
  const IdealLatticePtr ideals = ctx.ideals();
  Json list = Json::array();
  for (NodeId v = 0; v < ideals->size(); ++v) list.push_back(ideals->label(v));
  return {{"count", ideals->size()}, {"upsets", list}};
}

Json cmd_greedy(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  return extension_report(name, greedy_extension(ctx.ideals(), *phi));
}

Json cmd_mobius_extend(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  return extension_report(name, mobius_extension(ctx.ideals(), *phi));
}

Json cmd_dual_mobius_extend(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  return extension_report(name, dual_mobius_extension(ctx.ideals(), *phi));
}

Json cmd_lambda(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  const Lattice& L = ctx.lattice();
  const std::vector<Element> seq = ctx.seq();
  if (seq.size() != 1) throw UsageError("lambda takes a single element in --seq");
  const Element a = seq.front();
  Json out = {{"capacity", name}, {"a", L.name(a)}};
  if (auto b = ctx.at()) {
    out["b"] = L.name(*b);
    out["value"] = to_string(lambda_bound(*phi, a, *b));
    out["path"] = path_json(L, lambda_path(*phi, a, *b));
  } else {
    out["row"] = fn_json(lambda_row(*phi, a));
  }
  return out;
}

Json cmd_lambda_seq(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  const Lattice& L = ctx.lattice();
  const std::vector<Element> seq = ctx.seq();
  const LatticeFn result = successive_lambda(*phi, seq);
  Json out = {{"capacity", name}, {"seq", path_json(L, seq)}};
  if (auto x = ctx.at()) {
    out["at"] = L.name(*x);
    out["value"] = to_string(result[*x]);
  } else {
    out["values"] = fn_json(result);
  }
  return out;
}

Json cmd_frechet_bound(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  const IdealLatticePtr ideals = ctx.ideals();
  Json out = {{"capacity", name}};
  if (!ctx.opt.upset.empty()) {
    const NodeId u = ideals->find_upset(ctx.opt.upset);
    out["upset"] = ideals->label(u);
    out["value"] =
        to_string(frechet_bound(*ideals, *phi, upset_indicator(*ideals, u)));
    return out;
  }
  IdealFn table(ideals->size());
  Json rows = Json::array();
  for (NodeId u = 0; u < ideals->size(); ++u) {
    table[u] = frechet_bound(*ideals, *phi, upset_indicator(*ideals, u));
    rows.push_back({{"upset", ideals->label(u)}, {"value", to_string(table[u])}});
  }
  out["bounds"] = rows;
  const LatticePtr as = share(ideals->as_lattice());
  out["completely_monotone"] =
      classify(LatticeFn(as, table)).is_completely_monotone;
  return out;
}

Json cmd_construct(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  const std::vector<Element> seq = ctx.seq();
  const Extension ext = construct_extension_along_path(ctx.ideals(), *phi, seq);
  Json out = extension_report(name, ext);
  out["seq"] = path_json(ctx.lattice(), seq);
  out["projects_onto_phi"] = project(ext).values() == phi->values();
  return out;
}

Json cmd_compare(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  const AntichainCertificate cert = norberg_dominance(*phi, ctx.psi());
  Json out = {{"capacity", name}, {"holds", cert.holds}};
  if (cert.violation) {
    out["antichain"] = path_json(ctx.lattice(), cert.violation->items());
    out["lhs"] = to_string(cert.lhs);
    out["rhs"] = to_string(cert.rhs);
  }
  return out;
}

Json cmd_comp_condition(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  const Lattice& L = ctx.lattice();
  const PathCertificate cert = comp_condition(*phi, ctx.psi());
  Json out = {{"capacity", name}, {"holds", cert.holds}};
  if (cert.violation) {
    out["witness"] = path_json(L, *cert.violation);
    out["lhs"] = to_string(cert.lhs);
    out["rhs"] = to_string(cert.rhs);
    Json all = Json::array();
    for (const auto& path : cert.violations) all.push_back(path_json(L, path));
    out["shortest_violations"] = all;
  }
  return out;
}

Json cmd_couple(Context& ctx) {
  const auto [name, phi] = ctx.capacity();
  const Lattice& L = ctx.lattice();
  Json out = {{"capacity", name}, {"mode", ctx.opt.mode}};
  if (ctx.opt.mode == "dominance") {
    const auto atoms = dominance_coupling(*phi, ctx.psi());
    out["feasible"] = atoms.has_value();
    if (atoms) {
      Json list = Json::array();
      for (const auto& a : *atoms) {
        list.push_back({{"x", L.name(a.lower)},
                        {"y", L.name(a.upper)},
                        {"mass", to_string(a.mass)}});
      }
      out["atoms"] = list;
    }
  } else if (ctx.opt.mode == "membership") {
    const auto joint = membership_coupling(ctx.ideals(), *phi, ctx.psi());
    out["feasible"] = joint.has_value();
    if (joint) {
      Json list = Json::array();
      for (const auto& a : joint->atoms) {
        list.push_back({{"upset", joint->ideals->label(a.upset)},
                        {"y", L.name(a.y)},
                        {"mass", to_string(a.mass)}});
      }
      out["atoms"] = list;
      out["replayed"] = replay_membership(*joint, *phi, ctx.psi());
    }
  } else {
    throw UsageError("--mode must be dominance or membership");
  }
  return out;
}

Json cmd_worked_examples(Context& ctx) {
  Json list = Json::array();
  bool all = true;
  for (const auto& check : fixtures::worked_examples()) {
    all = all && check.passed;
    list.push_back({{"name", check.name},
                    {"passed", check.passed},
                    {"detail", check.detail}});
  }
  if (!all) ctx.exit_code = 1;
  return {{"examples", list}, {"all_passed", all}};
}

void flatten(const Json& v, const std::string& prefix, std::ostream& out) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items()) {
      flatten(child, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (v.is_array()) {
    const bool scalars = std::all_of(v.begin(), v.end(), [](const Json& e) {
      return e.is_primitive();
    });
    if (scalars) {
      out << prefix << ":";
      for (const auto& e : v) out << ' ' << (e.is_string() ? e.get<std::string>() : e.dump());
      out << '\n';
    } else {
      for (std::size_t i = 0; i < v.size(); ++i) {
        flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
      }
    }
  } else {
    out << prefix << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
        << '\n';
  }
}

struct Command {
  const char* name;
  const char* help;
  std::function<Json(Context&)> run;
  bool needs_file = true;
};

const std::vector<Command>& commands() {
  static const std::vector<Command> list = {
      {"validate", "Check that the file describes a lattice", cmd_validate},
      {"classify", "Monotonicity classes of a capacity", cmd_classify},
      {"mobius-inverse", "Moebius inverse of a capacity", cmd_mobius_inverse},
      {"nabla", "Successive difference over --seq at --at", cmd_nabla},
      {"upsets", "Enumerate the nonempty up-sets", cmd_upsets},
      {"greedy-extend", "Level-set extension", cmd_greedy},
      {"mobius-extend", "Moebius extension", cmd_mobius_extend},
      {"dual-mobius-extend", "Extension from the dual capacity",
       cmd_dual_mobius_extend},
      {"lambda", "Lambda bound from one element", cmd_lambda},
      {"lambda-seq", "Successive Lambda differences", cmd_lambda_seq},
      {"frechet-bound", "Lower bound over all extensions", cmd_frechet_bound},
      {"construct-extension", "Extension built along a monotone path",
       cmd_construct},
      {"compare", "Antichain dominance against psi", cmd_compare},
      {"comp-condition", "Monotone-path condition against psi",
       cmd_comp_condition},
      {"couple", "Coupling LP (dominance or membership)", cmd_couple},
      {"paper-examples", "Re-derive the worked examples", cmd_worked_examples,
       false},
  };
  return list;
}

std::string joined(const std::vector<std::string>& args) {
  std::string out;
  for (const auto& a : args) out += (out.empty() ? "" : " ") + a;
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Options opt;
  CLI::App app{"Capacities, extensions and couplings on finite lattices"};
  app.name("caplat");
  app.require_subcommand(1);
  std::map<CLI::App*, const Command*> by_app;
  for (const auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    if (cmd.needs_file) {
      sub->add_option("file", opt.file, "Problem file")->required();
    }
    sub->add_option("--capacity", opt.capacity, "Capacity name in the file");
    sub->add_option("--seq", opt.seq, "Element list a,b,c");
    sub->add_option("--at", opt.at, "Evaluation element");
    sub->add_option("--upset", opt.upset, "Up-set generators a|b|c");
    sub->add_option("--mode", opt.mode, "dominance or membership");
    sub->add_option("--cap", opt.cap, "Limit on the number of up-sets");
    sub->add_flag("--table", opt.table, "Plain-text output");
    by_app[sub] = &cmd;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }
  const Command* cmd = by_app.at(app.get_subcommands().front());

  try {
    Context ctx{opt, {}};
    if (cmd->needs_file) ctx.problem = load_problem(opt.file);
    const Json result = cmd->run(ctx);
    Json report = {{"command", joined(args)}};
    if (cmd->needs_file) {
      report["input"] = {{"file", opt.file}, {"digest", ctx.problem.digest}};
    }
    report["result"] = result;
    if (opt.table) {
      flatten(report, "", out);
    } else {
      out << report.dump(2) << '\n';
    }
    return ctx.exit_code;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace caplat
