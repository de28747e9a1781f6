// Batch front end for the GDoF region toolkit.
//
// Exit codes: 0 for success / true verdicts, 1 for false verdicts
// (conditions unsatisfied, regions unequal, scheme infeasible, no parameters
// found), 2 for input errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "gdof/json_io.hpp"
#include "gdof/kuser.hpp"
#include "gdof/sim.hpp"
#include "gdof/sweep.hpp"

using namespace gdof;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct ChannelArgs {
  std::string file;
  std::vector<std::string> cyclic;  // two rationals (a, b)

  ChannelMatrix resolve() const {
    if (!cyclic.empty() && !file.empty())
      throw InputError("pass either a channel file or --cyclic, not both");
    if (!cyclic.empty()) {
      if (cyclic.size() != 2) throw InputError("--cyclic needs exactly two values");
      return cyclic_channel(parse_rational(cyclic[0]), parse_rational(cyclic[1]));
    }
    if (file.empty()) throw InputError("no channel given: pass a file or --cyclic a b");
    return channel_from_json(load_json(file));
  }
};

void add_channel_options(CLI::App* cmd, ChannelArgs& args, bool positional = true) {
  if (positional) cmd->add_option("channel", args.file, "channel JSON file");
  cmd->add_option("--cyclic", args.cyclic,
                  "cyclic (1,a,b) channel; decimals are parsed exactly")
      ->expected(2);
}

std::ostream& out_stream(const std::string& out_path, std::ofstream& file) {
  if (out_path.empty()) return std::cout;
  file.open(out_path);
  if (!file) throw InputError("cannot write '" + out_path + "'");
  return file;
}

void emit(const Json& j, const std::string& out_path) {
  std::ofstream f;
  out_stream(out_path, f) << j.dump(2) << "\n";
}

GenerationBudget budget_from_env() {
  GenerationBudget b;
  if (const char* s = std::getenv("GDOF_BUDGET_DEPTH")) b.merge_depth = std::atoi(s);
  if (const char* s = std::getenv("GDOF_BUDGET_MULTISET")) b.max_multiset = std::atoi(s);
  if (const char* s = std::getenv("GDOF_BUDGET_PATTERNS")) b.max_patterns = std::atol(s);
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact GDoF region toolkit for the finite-precision-CSIT MISO broadcast channel"};
  app.require_subcommand(1);

  // check
  auto* c_check = app.add_subcommand("check", "test the SLS-optimality conditions");
  ChannelArgs check_args;
  add_channel_options(c_check, check_args);
  std::string check_out;
  c_check->add_option("--out", check_out, "write JSON here instead of stdout");

  // region
  auto* c_region = app.add_subcommand("region", "outer bound and all achievable parts");
  ChannelArgs region_args;
  add_channel_options(c_region, region_args);
  bool region_vertices = false;
  std::string region_out;
  c_region->add_flag("--vertices", region_vertices, "include vertex representations");
  c_region->add_option("--out", region_out, "write JSON here instead of stdout");

  // verify-equivalence
  auto* c_verify = app.add_subcommand("verify-equivalence",
                                      "does one achievable part equal the outer bound?");
  ChannelArgs verify_args;
  add_channel_options(c_verify, verify_args);
  std::string verify_out;
  c_verify->add_option("--out", verify_out, "write JSON here instead of stdout");

  // verify-scheme
  auto* c_scheme = app.add_subcommand("verify-scheme", "check a layered scheme end to end");
  std::string scheme_file, scheme_channel, scheme_out;
  c_scheme->add_option("scheme", scheme_file, "scheme JSON file")->required();
  c_scheme->add_option("--channel", scheme_channel, "channel JSON when the scheme omits it");
  c_scheme->add_option("--out", scheme_out, "write JSON here instead of stdout");

  // params-for-vertex
  auto* c_pfv = app.add_subcommand("params-for-vertex",
                                   "power-control parameters achieving a region point");
  ChannelArgs pfv_args;
  add_channel_options(c_pfv, pfv_args);
  std::string pfv_vertex, pfv_out;
  c_pfv->add_option("--vertex", pfv_vertex, "comma-separated point, e.g. 1.2,0.2,0.1")
      ->required();
  c_pfv->add_option("--out", pfv_out, "write JSON here instead of stdout");

  // kbounds
  auto* c_kb = app.add_subcommand("kbounds", "K-user outer bounds from bounding patterns");
  ChannelArgs kb_args;
  add_channel_options(c_kb, kb_args);
  int kb_K = 0, kb_depth = -1, kb_explain = -1;
  long kb_patterns = 0;
  int kb_multiset = 0;
  std::string kb_out;
  c_kb->add_option("--K", kb_K, "expected user count (checked against the channel)");
  c_kb->add_option("--depth", kb_depth, "merge depth budget");
  c_kb->add_option("--max-patterns", kb_patterns, "pattern count budget");
  c_kb->add_option("--max-multiset", kb_multiset, "multiset size budget");
  c_kb->add_option("--explain", kb_explain, "print the derivation chain of one row");
  c_kb->add_option("--out", kb_out, "write JSON here instead of stdout");

  // cyclic-sweep
  auto* c_sweep = app.add_subcommand("cyclic-sweep", "regime classification over [0,1]^2");
  std::string sweep_step = "1/64", sweep_out;
  bool sweep_regions = false;
  c_sweep->add_option("--step", sweep_step, "grid step (exact rational), default 1/64");
  c_sweep->add_flag("--regions", sweep_regions,
                    "append the outer-region rows per grid point (slow)");
  c_sweep->add_option("--out", sweep_out, "write CSV here instead of stdout");

  // simulate
  auto* c_sim = app.add_subcommand("simulate", "finite-power Monte Carlo of a scheme");
  std::string sim_scheme, sim_channel, sim_out;
  std::vector<double> sim_grid;
  int sim_trials = 200;
  std::uint64_t sim_seed = 1;
  bool sim_serial = false;
  c_sim->add_option("scheme", sim_scheme, "scheme JSON file")->required();
  c_sim->add_option("--channel", sim_channel, "channel JSON when the scheme omits it");
  c_sim->add_option("--powers", sim_grid, "nominal power grid (ascending)");
  c_sim->add_option("--trials", sim_trials, "samples per grid power");
  c_sim->add_option("--seed", sim_seed, "RNG seed");
  c_sim->add_flag("--serial", sim_serial, "run the serial reference path");
  c_sim->add_option("--out", sim_out, "write CSV here (JSON summary then on stdout)");

  // dual-check
  auto* c_dual = app.add_subcommand("dual-check",
                                    "outer bound invariance under channel transposition");
  ChannelArgs dual_args;
  add_channel_options(c_dual, dual_args);
  std::string dual_out;
  c_dual->add_option("--out", dual_out, "write JSON here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_check) {
      ConditionReport rep = check_sls_conditions(check_args.resolve());
      emit(condition_report_to_json(rep), check_out);
      return rep.satisfied ? 0 : 1;
    }

    if (*c_region) {
      RegionVerdict v = achievability_verdict(region_args.resolve());
      if (region_vertices) {
        v.outer.set_vrep(vertices(v.outer));
        for (auto& [label, part] : v.parts)
          if (part) part->set_vrep(vertices(*part));
      }
      emit(verdict_to_json(v, region_vertices), region_out);
      return 0;
    }

    if (*c_verify) {
      RegionVerdict v = achievability_verdict(verify_args.resolve());
      Json j;
      j["equal"] = v.equal;
      j["matched"] = v.matched ? Json(*v.matched) : Json(nullptr);
      j["predicted"] = v.predicted ? Json(*v.predicted) : Json(nullptr);
      j["conditions_satisfied"] = v.conditions_satisfied;
      emit(j, verify_out);
      return v.equal ? 0 : 1;
    }

    if (*c_scheme) {
      std::optional<ChannelMatrix> fallback;
      if (!scheme_channel.empty()) fallback = channel_from_json(load_json(scheme_channel));
      SlsScheme s = scheme_from_json(load_json(scheme_file),
                                     fallback ? &*fallback : nullptr);
      SplitCheck sc = validate_rate_split(s);
      SinrReport rep = sinr_exponents(s);
      // Human-readable table on stderr, JSON on stdout / --out.
      std::cerr << "receiver  layer  exponent      load          ok\n";
      for (const auto& e : rep.entries)
        std::cerr << "   " << e.receiver << "      " << e.layer
                  << (e.layer.size() < 3 ? std::string(3 - e.layer.size(), ' ') : "")
                  << "    " << rational_str(e.exponent) << "    " << rational_str(e.load)
                  << "    " << (e.load <= e.exponent ? "yes" : "NO") << "\n";
      Json j = sinr_report_to_json(rep);
      j["split_valid"] = sc.ok;
      if (!sc.ok) j["split_failure"] = sc.failure;
      Json ind = Json::array();
      for (const auto& d : sc.induced) ind.push_back(rational_str(d));
      j["induced_gdof"] = std::move(ind);
      emit(j, scheme_out);
      return (rep.feasible && sc.ok) ? 0 : 1;
    }

    if (*c_pfv) {
      ChannelMatrix ch = pfv_args.resolve();
      Point v = parse_rational_list(pfv_vertex);
      auto res = params_for_vertex(ch, v);
      Json j;
      j["found"] = res.has_value();
      if (res) {
        j["variant"] = variant_name(res->variant);
        Json order = Json::array();
        for (int i : res->order) order.push_back(i + 1);
        j["order"] = std::move(order);
        j["params"] = params_to_json(res->params);
        j["source"] = res->source;
        j["table_miss"] = res->table_miss ? Json(*res->table_miss) : Json(nullptr);
      }
      emit(j, pfv_out);
      return res ? 0 : 1;
    }

    if (*c_kb) {
      ChannelMatrix ch = kb_args.resolve();
      if (kb_K != 0 && kb_K != ch.K)
        throw InputError("--K disagrees with the channel's user count");
      GenerationBudget budget = budget_from_env();
      if (kb_depth >= 0) budget.merge_depth = kb_depth;
      if (kb_patterns > 0) budget.max_patterns = kb_patterns;
      if (kb_multiset > 0) budget.max_multiset = kb_multiset;
      KBoundsResult res = enumerate_outer_bounds(ch, budget);
      Json j;
      j["K"] = ch.K;
      j["truncated"] = res.truncated;
      j["patterns_generated"] = res.patterns_generated;
      j["polytope"] = polytope_to_json(res.poly);
      Json rows = Json::array();
      for (std::size_t i = 0; i < res.poly.hrep().size(); ++i) {
        Json row;
        Json coeffs = Json::array();
        for (const auto& c : res.poly.hrep()[i].coeffs) coeffs.push_back(rational_str(c));
        row["coeffs"] = std::move(coeffs);
        row["rhs"] = rational_str(res.poly.hrep()[i].rhs);
        row["pattern"] = res.row_provenance[i];
        rows.push_back(std::move(row));
      }
      j["rows"] = std::move(rows);
      emit(j, kb_out);
      if (kb_explain >= 0) {
        if (kb_explain >= static_cast<int>(res.poly.hrep().size()))
          throw InputError("--explain row index out of range");
        const auto& row = res.poly.hrep()[kb_explain];
        std::cerr << "row " << kb_explain << ":";
        for (std::size_t c = 0; c < row.coeffs.size(); ++c)
          if (row.coeffs[c] != 0)
            std::cerr << " + " << rational_str(row.coeffs[c]) << " d" << (c + 1);
        std::cerr << " <= " << rational_str(row.rhs) << "\n"
                  << "from pattern " << res.row_provenance[kb_explain] << "\n";
        if (res.row_derivations[kb_explain])
          std::cerr << "derivation:\n"
                    << explain_derivation(res.row_derivations[kb_explain]) << "\n";
      }
      return 0;
    }

    if (*c_sweep) {
      Rational step = parse_rational(sweep_step);
      auto cells = cyclic_sweep(step);
      std::ofstream f;
      auto& os = out_stream(sweep_out, f);
      os << "a,b,sls,tin" << (sweep_regions ? ",region" : "") << "\n";
      for (const auto& c : cells) {
        os << rational_str(c.a) << "," << rational_str(c.b) << "," << (c.sls ? 1 : 0)
           << "," << (c.tin ? 1 : 0);
        if (sweep_regions) {
          Polytope r = outer_region(cyclic_channel(c.a, c.b));
          std::string text = polytope_to_json(r).dump();
          for (auto& ch : text)
            if (ch == ',') ch = ';';
          os << "," << text;
        }
        os << "\n";
      }
      return 0;
    }

    if (*c_sim) {
      std::optional<ChannelMatrix> fallback;
      if (!sim_channel.empty()) fallback = channel_from_json(load_json(sim_channel));
      SlsScheme s = scheme_from_json(load_json(sim_scheme), fallback ? &*fallback : nullptr);
      SimConfig cfg;
      if (!sim_grid.empty()) cfg.P_grid = sim_grid;
      cfg.trials = sim_trials;
      cfg.seed = sim_seed;
      cfg.parallel = !sim_serial;
      SimResult r = simulate_scheme(s, cfg);

      std::ostringstream csv;
      csv << "P,receiver,layer,mean_normalized_rate,design_load,gap\n";
      for (std::size_t pi = 0; pi < r.P_grid.size(); ++pi)
        for (const auto& cell : r.cells[pi])
          csv << r.P_grid[pi] << "," << cell.receiver << "," << cell.layer << ","
              << cell.mean_norm_rate << "," << cell.design_load << "," << cell.gap << "\n";

      Json summary;
      summary["seed"] = r.seed;
      summary["trials"] = r.trials;
      Json slopes = Json::array();
      for (double v : slope_estimate(r)) slopes.push_back(v);
      summary["slope_per_user"] = std::move(slopes);
      Json design = Json::array();
      for (double v : r.design_d) design.push_back(v);
      summary["design_gdof"] = std::move(design);
      Json sums = Json::array();
      for (std::size_t pi = 0; pi < r.P_grid.size(); ++pi) {
        Json rx = Json::array();
        for (double v : r.rx_sum_norm[pi]) rx.push_back(v);
        sums.push_back(Json{{"P", r.P_grid[pi]}, {"receiver_sum_normalized", rx}});
      }
      summary["receiver_sums"] = std::move(sums);

      if (!sim_out.empty()) {
        std::ofstream f(sim_out);
        if (!f) throw InputError("cannot write '" + sim_out + "'");
        f << csv.str();
        std::cout << summary.dump(2) << "\n";
      } else {
        std::cout << csv.str();
        std::cerr << summary.dump(2) << "\n";
      }
      return 0;
    }

    if (*c_dual) {
      ChannelMatrix ch = dual_args.resolve();
      Polytope a = outer_region(ch);
      Polytope b = outer_region(dual(ch));
      bool equal = poly_equal(a, b);
      Json j;
      j["equal"] = equal;
      j["outer"] = polytope_to_json(a);
      j["dual_outer"] = polytope_to_json(b);
      emit(j, dual_out);
      return equal ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ChannelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
