// Command-line front end: check instance files, run the theorem suite, list the
// catalog, re-check stored witnesses.
//
// Exit status: 0 success, 1 expectation mismatch / suite failure / witness
// not confirmed, 2 usage, input or instance-file errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "skewpbw/skewpbw.hpp"

namespace {

using skewpbw::Json;

struct Flags {
  std::optional<unsigned> degree_bound;
  std::optional<unsigned> power_bound;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::uint64_t element_budget = skewpbw::kDefaultElementBudget;
  unsigned jobs = 1;
  bool json = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const skewpbw::ReportRecord& r, const Flags& f) {
  if (f.json) {
    std::cout << skewpbw::to_json(r).dump() << "\n";
  } else {
    std::cout << skewpbw::to_text(r) << "\n";
  }
}

int cmd_check(const std::string& path, const Flags& f) {
  skewpbw::SpecFile spec;
  try {
    spec = skewpbw::parse_spec(read_file(path), true, f.element_budget);
  } catch (const skewpbw::SpecError& e) {
    std::cerr << path << ":" << e.what() << "\n";
    if (!e.witness().empty()) std::cerr << "  witness: " << e.witness() << "\n";
    return 2;
  }
  skewpbw::RunOptions opts;
  opts.degree_bound = f.degree_bound;
  opts.power_bound = f.power_bound;
  opts.seed = f.seed;
  opts.candidate_cap = f.budget;
  opts.element_budget = f.element_budget;
  opts.jobs = f.jobs;
  const auto result = skewpbw::run_spec(spec, opts);
  for (const auto& r : result.records) emit(r, f);
  return result.exit_code;
}

int cmd_verify(const std::optional<std::string>& instance, const Flags& f) {
  skewpbw::SuiteOptions opts;
  if (f.degree_bound) opts.degree_bound = *f.degree_bound;
  if (f.power_bound) opts.power_bound = *f.power_bound;
  if (f.seed) opts.seed = *f.seed;
  if (f.budget) opts.candidate_cap = *f.budget;
  opts.element_budget = f.element_budget;
  opts.jobs = f.jobs;
  const auto reports = skewpbw::verify_theorems(opts, instance);
  for (const auto& t : reports) emit(skewpbw::theorem_record(t), f);
  return skewpbw::suite_passed(reports) ? 0 : 1;
}

int cmd_catalog(const Flags& f) {
  for (const auto& e : skewpbw::catalog()) {
    if (f.json) {
      Json j;
      j["name"] = e.name;
      j["ring"] = e.ring_expr;
      j["maps"] = e.maps;
      j["description"] = e.description;
      if (e.expected) {
        j["expected"] = {{"reduced", e.expected->reduced},
                         {"ni", e.expected->ni},
                         {"abelian", e.expected->abelian},
                         {"sigma_rigid", e.expected->sigma_rigid},
                         {"weak_sigma_rigid", e.expected->weak_sigma_rigid}};
      }
      std::cout << j.dump() << "\n";
    } else {
      std::string maps;
      for (const auto& m : e.maps) maps += (maps.empty() ? "" : ",") + m;
      std::cout << e.name << "\t" << e.ring_expr << "\t" << maps << "\t" << e.description << "\n";
    }
  }
  if (!f.json) std::cout << "quantum-plane(Zp,q)\tZp\tid,id\tx2 x1 = q x1 x2 over Zp, any p and q\n";
  return 0;
}

int cmd_explain(const std::string& path, const Flags& f) {
  const std::string text = read_file(path);
  std::vector<Json> inputs;
  try {
    const Json whole = Json::parse(text);
    inputs.push_back(whole);
  } catch (const Json::parse_error&) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos) inputs.push_back(Json::parse(line));
  }
  int code = 0;
  std::size_t explained = 0;
  for (const auto& in : inputs) {
    const Json& w = in.contains("witness") && in["witness"].is_object() ? in["witness"] : in;
    if (!w.is_object() || !w.contains("instance_spec")) continue;
    const auto ex = skewpbw::explain_witness(in, f.element_budget);
    ++explained;
    const std::string label = in.contains("check") ? in["check"].get<std::string>() + " [" + in.value("instance", "") + "]"
                                                   : ex.property;
    if (f.json) {
      Json j;
      j["check"] = label;
      j["property"] = ex.property;
      j["confirmed"] = ex.confirmed;
      j["facts"] = ex.lines;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << label << ": witness " << (ex.confirmed ? "confirmed" : "NOT confirmed") << "\n";
      for (const auto& l : ex.lines) std::cout << "  " << l << "\n";
    }
    if (!ex.confirmed) code = 1;
  }
  if (explained == 0) {
    std::cerr << path << ": no witness with an instance_spec found\n";
    return 2;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-ring skew PBW extension toolkit"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--degree-bound", f.degree_bound, "degree bound D for Armendariz searches");
  app.add_option("--power-bound", f.power_bound, "power bound K for nilpotency of polynomials");
  app.add_option("--seed", f.seed, "seed for sampled enumerations");
  app.add_option("--budget", f.budget, "cap on (f, g) candidate pairs per Armendariz search");
  app.add_option("--element-budget", f.element_budget, "largest ring enumerated element by element");
  app.add_option("--jobs", f.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_flag("--json", f.json, "newline-delimited JSON records");

  std::string spec_path;
  auto* check = app.add_subcommand("check", "run the checks of an instance file");
  check->add_option("instance-file", spec_path)->required();
  check->fallthrough();

  std::optional<std::string> instance;
  auto* verify = app.add_subcommand("verify-theorems", "run the theorem suite over the catalog");
  verify->add_option("--instance", instance, "restrict to one catalog instance");
  verify->fallthrough();

  auto* cat = app.add_subcommand("catalog", "catalog commands");
  cat->add_subcommand("list", "list builtin instances");
  cat->require_subcommand(1);
  cat->fallthrough();

  std::string witness_path;
  auto* explain = app.add_subcommand("explain", "re-check a stored witness");
  explain->add_option("witness-file", witness_path)->required();
  explain->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(spec_path, f);
    if (*verify) return cmd_verify(instance, f);
    if (*cat) return cmd_catalog(f);
    if (*explain) return cmd_explain(witness_path, f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
