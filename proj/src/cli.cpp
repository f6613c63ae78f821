#include "kron/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "kron/designs.hpp"
#include "kron/errors.hpp"
#include "kron/oracle.hpp"
#include "kron/pointset.hpp"
#include "kron/reductions.hpp"

namespace kron::cli {

namespace {

Json read_input(const std::string& arg) {
  std::string text;
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
    text = arg;
  } else if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(arg);
    if (!in) throw InvalidArgument("io_error", "cannot read " + arg);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("parse_error", std::string("invalid JSON: ") + e.what());
  }
}

void write_output(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("io_error", "cannot write " + path);
  out << j.dump(2) << '\n';
}

Rational parse_epsilon(const std::string& text) {
  Rational e;
  try {
    e = parse_rational(text);
  } catch (const Error&) {
    throw InvalidArgument("invalid_epsilon", "epsilon must be a rational number: " + text);
  }
  if (e <= 0 || e > 1) throw InvalidArgument("invalid_epsilon", "epsilon must satisfy 0 < epsilon <= 1");
  return e;
}

Json heights(const PartitionTriple& t) {
  return {{"lambda", to_json(t.lambda().height())},
          {"mu", to_json(t.mu().height())},
          {"pi", to_json(t.pi().height())}};
}

Json stats_json(const ChainStats& s) {
  return {{"height_lambda", to_json(s.height_lambda)},
          {"height_mu", to_json(s.height_mu)},
          {"size", to_json(s.size)},
          {"r", to_json(s.r)},
          {"c", to_json(s.c)},
          {"s", to_json(s.s)}};
}

Json final_json(const RestrictedKroneckerInstance& inst) {
  auto report = verify_restricted(inst);
  return {{"instance", to_json(ReductionInstance(inst))},
          {"stats", stats_json(chain_stats(inst))},
          {"constraints", to_json(report.constraints)},
          {"all_passed", report.all_passed()}};
}

Json cmd_coeff(const Json& in) {
  return {{"k", to_json(kronecker(triple_from_json(in)))}};
}

Json cmd_bounds(const Json& in) {
  auto b = verify_bounds(triple_from_json(in));
  Json out = {{"p", to_json(b.p)}, {"t", to_json(b.t)}};
  if (b.k) out["k"] = to_json(*b.k);
  else out["note"] = "k omitted: triple exceeds the oracle budget";
  return out;
}

Json cmd_classify(const Json& in) {
  auto t = triple_from_json(in);
  Json out;
  out["simplex_like"] = t.size() > 0 && is_simplex_like(t);
  if (auto w = t.size() > 0 ? recognize_pedestalled(t) : std::nullopt)
    out["pedestalled"] = {{"base", to_json(w->base)}, {"a", to_json(w->a)}, {"b", to_json(w->b)},
                          {"c", to_json(w->c)}};
  else
    out["pedestalled"] = nullptr;
  if (auto f = t.size() > 0 ? recognize_lattice_permutation_form(t) : std::nullopt) {
    Json d = Json::array();
    for (const auto& v : f->d) d.push_back(to_json(v));
    out["lattice_permutation_form"] = {{"r", to_json(f->r)}, {"d", d}};
  } else {
    out["lattice_permutation_form"] = nullptr;
  }
  auto hook = [](const Partition& p) { return !p.empty() && is_hook(p); };
  out["hook"] = {{"lambda", hook(t.lambda())}, {"mu", hook(t.mu())}, {"pi", hook(t.pi())}};
  out["heights"] = heights(t);
  out["size"] = to_json(t.size());
  return out;
}

DecideMethod method_from(const std::string& m) {
  if (m == "auto") return DecideMethod::Auto;
  if (m == "hook") return DecideMethod::Hook;
  if (m == "const-height") return DecideMethod::ConstHeight;
  if (m == "rectangular") return DecideMethod::Rectangular;
  if (m == "simplex-like") return DecideMethod::SimplexLike;
  throw InvalidArgument("usage", "unknown method " + m);
}

Json cmd_decide(const Json& in, const std::string& method) {
  auto d = t_tilde_positive(triple_from_json(in), method_from(method));
  Json cert = Json::object();
  if (d.design) cert["design"] = to_json(*d.design);
  if (d.flow) cert["flow"] = to_json(*d.flow);
  if (d.count) cert["count"] = to_json(*d.count);
  if (d.witness) cert["witness"] = to_json(*d.witness);
  return {{"t_positive", d.positive}, {"method", d.method}, {"certificate", cert}};
}

Json cmd_reduce(const Json& in, const std::string& eps, const std::string& trace_path) {
  auto inst = instance_from_json(in);
  auto* m = std::get_if<ThreeDMInstance>(&inst);
  if (!m) throw InvalidArgument("usage", "reduce expects a 3dm instance");
  auto res = pipeline(*m, parse_epsilon(eps));
  if (!trace_path.empty()) write_output(trace_path, to_json(res.trace));
  return final_json(res.instance);
}

Json cmd_generate(std::size_t count, const std::string& eps, const std::vector<std::string>& hex) {
  auto bits = shortlex_bitstrings(count);
  for (const auto& h : hex) bits.push_back(bits_from_hex(h));
  auto insts = generate_no_instances(bits);
  std::optional<Rational> e;
  if (!eps.empty()) e = parse_epsilon(eps);
  Json list = Json::array();
  for (std::size_t i = 0; i < insts.size(); ++i) {
    Json item = {{"bits", bits[i]}, {"instance", to_json(ReductionInstance(insts[i]))}};
    if (e) {
      auto res = pipeline(insts[i], *e);
      auto report = verify_restricted(res.instance);
      item["output"] = {{"stats", stats_json(chain_stats(res.instance))},
                        {"all_passed", report.all_passed()}};
    }
    list.push_back(item);
  }
  return {{"count", std::to_string(list.size())}, {"instances", list}};
}

Json cmd_verify(const Json& in, const std::string& eps) {
  RestrictedKroneckerInstance inst;
  if (in.is_object() && in.value("type", "") == "restricted_kronecker") {
    inst = std::get<RestrictedKroneckerInstance>(instance_from_json(in));
  } else {
    inst.columns = any_triple_from_json(in);
    inst.m = inst.columns.mu_t.length() > 0 ? inst.columns.mu_t.eval(0) : BigInt(0);
  }
  if (!eps.empty()) inst.epsilon = parse_epsilon(eps);
  else if (inst.epsilon == 0) throw InvalidArgument("usage", "--epsilon is required");
  auto report = verify_restricted(inst);
  return {{"constraints", to_json(report.constraints)}, {"all_passed", report.all_passed()}};
}

Json cmd_solve(const Json& in, const std::string& problem) {
  auto inst = instance_from_json(in);
  std::string type = instance_type(inst);
  if (type != problem)
    throw InvalidArgument("usage", "instance type " + type + " does not match --problem " + problem);
  bool yes = false;
  if (auto* i = std::get_if<ThreeDMInstance>(&inst)) yes = solve_3dm(*i);
  else if (auto* i = std::get_if<PartitionInstance>(&inst)) yes = solve_partition(*i);
  else if (auto* i = std::get_if<Rn3dmInstance>(&inst)) yes = solve_rn3dm(*i);
  else if (auto* i = std::get_if<RnmtsInstance>(&inst)) yes = solve_rnmts(*i);
  else if (auto* i = std::get_if<PermutationInstance>(&inst)) yes = solve_permutation(*i);
  else throw InvalidArgument("usage", "no solver for " + type);
  return {{"yes", yes}};
}

CommandResult error(int exit_code, const std::string& code, const std::string& message) {
  return {false, {{"status", "error"}, {"code", code}, {"message", message}}, exit_code, {}};
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Kronecker coefficient toolkit", "kron"};
  app.require_subcommand(1);
  std::string input, method = "auto", epsilon, trace, problem;
  std::size_t count = 0;
  std::vector<std::string> hex;
  Json result;
  std::function<Json()> action;

  auto* coeff = app.add_subcommand("coeff", "Kronecker coefficient from the character table");
  coeff->add_option("triple", input, "triple JSON")->required();
  coeff->callback([&] { action = [&] { return cmd_coeff(read_input(input)); }; });

  auto* bounds = app.add_subcommand("bounds", "p <= k <= t");
  bounds->add_option("triple", input, "triple JSON")->required();
  bounds->callback([&] { action = [&] { return cmd_bounds(read_input(input)); }; });

  auto* classify = app.add_subcommand("classify", "structural classification of a triple");
  classify->add_option("triple", input, "triple JSON")->required();
  classify->callback([&] { action = [&] { return cmd_classify(read_input(input)); }; });

  auto* decide = app.add_subcommand("decide", "decide t > 0 with a certificate");
  decide->add_option("--method", method, "auto, hook, const-height, rectangular, simplex-like")
      ->check(CLI::IsMember({"auto", "hook", "const-height", "rectangular", "simplex-like"}));
  decide->add_option("triple", input, "triple JSON")->required();
  decide->callback([&] { action = [&] { return cmd_decide(read_input(input), method); }; });

  auto* reduce = app.add_subcommand("reduce", "run the reduction chain on a 3dm instance");
  reduce->add_option("--epsilon", epsilon, "exponent in (0, 1]")->required();
  reduce->add_option("--trace", trace, "write the stage-by-stage trace here");
  reduce->add_option("instance", input, "3dm instance JSON")->required();
  reduce->callback([&] { action = [&] { return cmd_reduce(read_input(input), epsilon, trace); }; });

  auto* generate = app.add_subcommand("generate", "matching-free 3dm instances");
  generate->add_option("--count", count, "first N bitstrings in shortlex order");
  generate->add_option("--epsilon", epsilon, "also run the chain with this exponent");
  generate->add_option("--bits", hex, "extra bitstring as hex digits");
  generate->callback([&] { action = [&] { return cmd_generate(count, epsilon, hex); }; });

  auto* verify = app.add_subcommand("verify", "check the restricted-problem constraints");
  verify->add_option("--epsilon", epsilon, "exponent in (0, 1]");
  verify->add_option("instance", input, "instance or triple JSON")->required();
  verify->callback([&] { action = [&] { return cmd_verify(read_input(input), epsilon); }; });

  auto* solve = app.add_subcommand("solve", "brute-force solver");
  solve->add_option("--problem", problem, "problem name")
      ->required()
      ->check(CLI::IsMember({"3dm", "4partition", "3partition", "rn3dm", "rnmts", "permutation"}));
  solve->add_option("instance", input, "instance JSON")->required();
  solve->callback([&] { action = [&] { return cmd_solve(read_input(input), problem); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    auto subs = app.get_subcommands();
    CommandResult r{true, {{"status", "ok"}}, kOk, subs.empty() ? app.help() : subs.front()->help()};
    return r;
  } catch (const CLI::ParseError& e) {
    return error(kUsage, "usage", e.what());
  }

  try {
    Json out = action();
    Json payload = {{"status", "ok"}};
    payload.update(out);
    return {true, payload, kOk, {}};
  } catch (const BudgetExceeded& e) {
    return error(kBudget, e.code(), e.what());
  } catch (const Error& e) {
    return error(kUsage, e.code(), e.what());
  } catch (const Json::exception& e) {
    return error(kUsage, "parse_error", e.what());
  }
}

}  // namespace kron::cli
