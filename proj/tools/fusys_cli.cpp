#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fusys/fusys.hpp"

using namespace fusys;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kInput = 2, kInternal = 3 };

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

void append_lines(const std::string& path, const std::vector<json>& rows) {
  if (path.empty() || rows.empty()) return;
  std::ofstream out(path, std::ios::app);
  if (!out) throw ValidationError("cannot write " + path);
  for (const auto& r : rows) out << r.dump() << '\n';
}

Subgroup pick_sylow(const GroupPtr& g, int p, const std::string& sylow) {
  if (!is_prime(p)) throw ValidationError("--p " + std::to_string(p) + " is not prime");
  Subgroup whole = Subgroup::whole(g);
  if (sylow.empty() || sylow == "auto") return sylow_subgroup(whole, p);
  json spec = json::parse(sylow);
  if (spec.is_array()) return Subgroup(g, spec.get<std::vector<int>>());
  throw ValidationError("--sylow expects \"auto\" or a JSON array of element indices");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double Burnside modules, fusion systems and characteristic idempotents"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t max_order = kDefaultMaxOrder;
  app.add_option("--max-order", max_order, "Largest group order accepted")->check(CLI::PositiveNumber);
  double check_budget = 0;
  app.add_option("--check-budget", check_budget, "Seconds allowed per check; 0 disables")
      ->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run one scenario file");
  std::string scenario_path, json_out, evidence_out;
  bool oracle = false;
  verify->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  verify->add_option("--json", json_out, "Write the JSON report here");
  verify->add_option("--evidence", evidence_out, "Append evidence rows (JSON lines) here");
  verify->add_flag("--oracle", oracle, "Also run set-level biset cross-checks");

  auto* catalog = app.add_subcommand("catalog", "Run the built-in verification suite");
  unsigned jobs = 1;
  std::string export_dir;
  bool list_only = false;
  catalog->add_flag("--oracle", oracle, "Also run set-level biset cross-checks");
  catalog->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  catalog->add_option("--json", json_out, "Write the aggregate JSON report here");
  catalog->add_option("--evidence", evidence_out, "Append evidence rows (JSON lines) here");
  catalog->add_option("--export", export_dir, "Write the catalog scenarios as files into this directory");
  catalog->add_flag("--list", list_only, "Only list the scenario names");

  auto* idem = app.add_subcommand("idempotent", "Characteristic idempotent of F_S(G)");
  std::string ambient_path, sylow = "auto", method = "linear", out_path;
  int p = 0;
  idem->add_option("--ambient", ambient_path, "Group description JSON file")->required();
  idem->add_option("--p", p, "Prime")->required();
  idem->add_option("--sylow", sylow, "\"auto\" or a JSON array of element indices");
  idem->add_option("--method", method, "linear or power")->check(CLI::IsMember({"linear", "power"}));
  idem->add_option("--out", out_path, "Output file (default: standard output)");

  auto* comp = app.add_subcommand("compose", "Product a o b of two elements");
  std::string a_path, b_path;
  comp->add_option("a", a_path, "Left factor (element JSON)")->required();
  comp->add_option("b", b_path, "Right factor (element JSON)")->required();
  comp->add_option("--out", out_path, "Output file (default: standard output)");

  auto* marks_cmd = app.add_subcommand("marks", "Mark vector of an element");
  std::string x_path;
  marks_cmd->add_option("x", x_path, "Element JSON")->required();
  marks_cmd->add_option("--json", json_out, "Write the marks as JSON here");

  auto* decomp = app.add_subcommand("decompose", "Decompose G as an (S, S)-biset");
  decomp->add_option("--ambient", ambient_path, "Group description JSON file")->required();
  decomp->add_option("--p", p, "Prime")->required();
  decomp->add_option("--sylow", sylow, "\"auto\" or a JSON array of element indices");
  decomp->add_option("--out", out_path, "Output file (default: standard output)");

  CLI11_PARSE(app, argc, argv);

  try {
    RunOptions opts{oracle, max_order, check_budget};
    if (*verify) {
      json scenario = read_json_file(scenario_path);
      Report rep = run_scenario(scenario, opts);
      std::cout << rep.text();
      if (!json_out.empty()) write_text(json_out, rep.to_json().dump(2) + "\n");
      append_lines(evidence_out, rep.evidence);
      return rep.ok() ? kOk : kCheckFailed;
    }
    if (*catalog) {
      if (list_only) {
        for (const auto& e : catalog_entries()) std::cout << e.name << '\n';
        return kOk;
      }
      if (!export_dir.empty()) {
        std::filesystem::create_directories(export_dir);
        for (const auto& e : catalog_entries())
          write_text((std::filesystem::path(export_dir) / (e.name + ".json")).string(), std::string(e.text) + "\n");
        return kOk;
      }
      auto reports = run_many(catalog_scenarios(), opts, jobs);
      bool internal = false;
      std::vector<json> evidence;
      for (const auto& r : reports) {
        std::cout << r.text();
        internal = internal || r.internal_error;
        evidence.insert(evidence.end(), r.evidence.begin(), r.evidence.end());
      }
      json agg = aggregate_json(reports);
      std::cout << "catalog: " << (agg["ok"].get<bool>() ? "ok" : "FAILED") << " (" << reports.size()
                << " scenarios)\n";
      if (!json_out.empty()) write_text(json_out, agg.dump(2) + "\n");
      append_lines(evidence_out, evidence);
      if (internal) return kInternal;
      return agg["ok"].get<bool>() ? kOk : kCheckFailed;
    }
    if (*idem) {
      GroupPtr g = GroupRegistry::instance().get(read_json_file(ambient_path), max_order);
      Subgroup s = pick_sylow(g, p, sylow);
      auto f = FusionSystem::from_group(Subgroup::whole(g), s, p);
      if (!f.warning().empty()) std::cerr << "warning: " << f.warning() << '\n';
      Element omega = characteristic_idempotent(
          f, method == "power" ? IdempotentMethod::power_iteration : IdempotentMethod::linear_solve);
      write_text(out_path, element_to_json(omega).dump(2) + "\n");
      return kOk;
    }
    if (*comp) {
      Element a = element_from_json(read_json_file(a_path), max_order);
      Element b = element_from_json(read_json_file(b_path), max_order);
      if (!(a.context().source == b.context().target))
        throw ValidationError("compose: the source of a is not the target of b");
      write_text(out_path, element_to_json(compose(a, b)).dump(2) + "\n");
      return kOk;
    }
    if (*marks_cmd) {
      Element x = element_from_json(read_json_file(x_path), max_order);
      auto m = marks(x);
      json rows = json::array();
      for (const auto& [at, value] : m) {
        std::cout << pair_label(at) << "  " << value.get_str() << '\n';
        rows.push_back(json{{"at", hom_to_json(at)}, {"mark", rational_to_json(value)}});
      }
      if (!json_out.empty()) write_text(json_out, rows.dump(2) + "\n");
      return kOk;
    }
    if (*decomp) {
      GroupPtr g = GroupRegistry::instance().get(read_json_file(ambient_path), max_order);
      Subgroup s = pick_sylow(g, p, sylow);
      Element x = characteristic_element_from_group(Subgroup::whole(g), s, p);
      write_text(out_path, element_to_json(x).dump(2) + "\n");
      return kOk;
    }
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
