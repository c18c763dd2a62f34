// persist: barcodes of filtered complexes from point clouds, functions and
// cell lists, plus invariants and the reproduction scenarios.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "persist/function_theory.hpp"
#include "persist/io.hpp"
#include "persist/representations.hpp"
#include "persist/symplectic_forms.hpp"
#include "scenarios.hpp"

using namespace persist;
using nlohmann::json;

namespace {

struct RunConfig {
  std::uint32_t field = 2;
  int max_dim = 2;
  std::string out;
  bool svg = false;
  std::uint64_t seed = kDefaultSeed;
  double slack_pct = 5;
};

int exit_code = 0;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) std::cout << text;
  else write_text_file(path, text);
}

std::string svg_path(const std::string& out) {
  auto dot = out.find_last_of('.');
  auto slash = out.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + ".svg";
  return out.substr(0, dot) + ".svg";
}

void emit_barcode(const Barcode& B, const RunConfig& cfg) {
  if (cfg.svg && cfg.out.empty()) {
    std::cout << barcode_svg(B);
    return;
  }
  emit(barcode_to_json(B), cfg.out);
  if (cfg.svg) write_text_file(svg_path(cfg.out), barcode_svg(B));
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_input("cannot open " + path);
  return in;
}

json number(double x) {
  if (std::isfinite(x)) return x;
  return x > 0 ? "inf" : "-inf";
}

Field field_of(const RunConfig& cfg) { return Field(cfg.field); }

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  std::vector<double> v;
  for (const auto& r : rows) v.insert(v.end(), r.begin(), r.end());
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistence barcodes, invariants and reproduction scenarios"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool complexes) {
    sub->add_option("--field", cfg.field, "prime characteristic of the coefficient field");
    if (complexes) sub->add_option("--max-dim", cfg.max_dim, "largest simplex dimension (bars below it are reported)");
    sub->add_option("--out", cfg.out, "output path (stdout if omitted)");
    sub->add_flag("--svg", cfg.svg, "also write an SVG diagram next to --out (or to stdout alone)");
  };

  std::string input, input2, simplices;
  bool metric = false;
  double max_scale = kInf, period = 2 * std::numbers::pi;

  auto* rips = app.add_subcommand("rips", "Rips barcode of a point cloud or distance matrix CSV");
  rips->add_option("input", input, "CSV file")->required();
  rips->add_flag("--metric", metric, "input is a distance matrix");
  rips->add_option("--max-scale", max_scale, "only simplices with diameter below this");
  common(rips, true);

  auto* cech = app.add_subcommand("cech", "Cech barcode of a Euclidean point cloud CSV (dimension 1 to 4)");
  cech->add_option("input", input, "CSV file")->required();
  common(cech, true);

  auto* sub = app.add_subcommand("sublevel", "sublevel barcode of vertex values on a triangulation");
  sub->add_option("values", input, "CSV of vertex values")->required();
  sub->add_option("--simplices", simplices, "CSV of maximal simplices, one vertex list per line")->required();
  common(sub, false);

  auto* circle = app.add_subcommand("circle", "sublevel barcode of cyclic samples");
  circle->add_option("input", input, "CSV of samples")->required();
  common(circle, false);

  auto* torus = app.add_subcommand("torus", "sublevel barcode of a periodic grid function");
  torus->add_option("input", input, "grid CSV, ny rows of nx values")->required();
  torus->add_option("--period", period, "side length of the torus");
  common(torus, false);

  auto* cx = app.add_subcommand("complex", "barcode of a filtered complex given as a cell list");
  cx->add_option("input", input, "cell list file")->required();
  common(cx, false);

  auto* mod = app.add_subcommand("module", "barcode of a persistence module JSON");
  mod->add_option("input", input, "module JSON")->required();
  common(mod, false);

  auto* dist = app.add_subcommand("distance", "bottleneck distance between two barcode files");
  dist->add_option("a", input, "barcode JSON")->required();
  dist->add_option("b", input2, "barcode JSON")->required();

  bool want_beta = false, want_ell = false, want_spectrum = false, want_mu_odd = false;
  std::vector<std::size_t> beta_ks, mu_ks;
  std::vector<double> nu_cs;
  auto* inv = app.add_subcommand("invariants", "numerical invariants of a barcode file");
  inv->add_option("input", input, "barcode JSON")->required();
  inv->add_flag("--beta", want_beta, "boundary depth");
  inv->add_option("--beta-k", beta_ks, "k-th largest finite bar length");
  inv->add_option("--mu", mu_ks, "multiplicity function mu_k");
  inv->add_flag("--mu-odd", want_mu_odd, "distance to barcodes with even multiplicities");
  inv->add_flag("--ell", want_ell, "total length of finite bars within the endpoint window");
  inv->add_option("--nu", nu_cs, "number of bars longer than c");
  inv->add_flag("--spectrum", want_spectrum, "endpoints of infinite bars");
  inv->add_option("--out", cfg.out, "output path (stdout if omitted)");

  std::string scenario;
  auto* rep = app.add_subcommand("reproduce", "run an acceptance scenario by name or number, or 'all'");
  rep->add_option("name", scenario, "scenario name, number or 'all'");
  rep->add_option("--seed", cfg.seed, "random seed");
  bool list = false;
  rep->add_flag("--list", list, "list the scenarios");

  std::string action;
  std::uint32_t pmi_field = 5;
  std::optional<double> rectangle;
  auto* pmi = app.add_subcommand("pmi", "(-1)-eigenspace barcode and odd-multiplicity bound of an involution");
  pmi->add_option("input", input, "cell list file, or a module-with-action JSON with --module");
  pmi->add_option("--action", action, "action JSON for a cell list");
  bool module_action = false;
  pmi->add_flag("--module", module_action, "input is a module with an action given slice by slice");
  pmi->add_option("--rectangle", rectangle, "use the built-in rectangle with side a");
  pmi->add_option("--field", pmi_field, "odd prime characteristic (default 5)");
  pmi->add_option("--out", cfg.out, "output path (stdout if omitted)");

  std::string config;
  auto* len = app.add_subcommand("length-experiment", "length inequality on random trigonometric polynomials");
  len->add_option("--config", config, "JSON with grid, lambda, count, seed, slack_pct");
  auto* seed_opt = len->add_option("--seed", cfg.seed, "random seed");
  auto* slack_opt = len->add_option("--slack", cfg.slack_pct, "slack in percent");

  std::vector<double> as;
  int dim_n = 1;
  double ratio = 1;
  auto* sh = app.add_subcommand("sh-table", "degrees of the ellipsoid generators over a grid of a values");
  sh->add_option("--a", as, "values of a")->required()->delimiter(',');
  sh->add_option("--n", dim_n, "complex dimension");
  sh->add_option("--N", ratio, "axis ratio of E(r, rN, ..., rN)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*rips) {
      auto in = open_input(input);
      FiniteMetricSpace X = metric ? distance_matrix_from_csv(in, input) : euclidean_metric(point_cloud_from_csv(in, input));
      emit_barcode(below_degree(barcode_of_complex(rips_complex(X, cfg.max_dim, max_scale), field_of(cfg)), cfg.max_dim), cfg);
    } else if (*cech) {
      auto in = open_input(input);
      PointCloud P = point_cloud_from_csv(in, input);
      emit_barcode(below_degree(barcode_of_complex(cech_complex(P, cfg.max_dim), field_of(cfg)), cfg.max_dim), cfg);
    } else if (*sub) {
      auto in = open_input(input);
      std::vector<double> values = flatten(read_csv(in, input));
      auto sin = open_input(simplices);
      std::vector<std::vector<std::size_t>> top;
      for (const auto& row : read_csv(sin, simplices)) {
        std::vector<std::size_t> s;
        for (double v : row) {
          if (v < 0 || v != std::floor(v)) fail_input(simplices + ": vertex indices must be non-negative integers");
          s.push_back(static_cast<std::size_t>(v));
        }
        top.push_back(s);
      }
      Triangulation T = Triangulation::from_maximal(values.size(), top);
      emit_barcode(barcode_of_complex(sublevel_filtration(T, values), field_of(cfg)), cfg);
    } else if (*circle) {
      auto in = open_input(input);
      emit_barcode(barcode_of_complex(circle_complex(flatten(read_csv(in, input))), field_of(cfg)), cfg);
    } else if (*torus) {
      auto in = open_input(input);
      emit_barcode(barcode_of_complex(torus_grid_complex(grid_from_csv(in, period, input)), field_of(cfg)), cfg);
    } else if (*cx) {
      auto in = open_input(input);
      emit_barcode(barcode_of_complex(parse_complex(in, input), field_of(cfg)), cfg);
    } else if (*mod) {
      emit_barcode(barcode(module_from_json(read_text_file(input), field_of(cfg))), cfg);
    } else if (*dist) {
      double d = bottleneck_distance(barcode_from_json(read_text_file(input)), barcode_from_json(read_text_file(input2)));
      if (std::isinf(d)) std::printf("inf\n");
      else std::printf("%.12g\n", d);
    } else if (*inv) {
      Barcode B = barcode_from_json(read_text_file(input));
      bool any = want_beta || want_ell || want_spectrum || want_mu_odd || !beta_ks.empty() || !mu_ks.empty() || !nu_cs.empty();
      json r = json::object();
      if (want_beta || !any) r["beta"] = number(boundary_depth(B));
      if (want_ell || !any) r["ell"] = number(function_ell(B));
      for (auto k : beta_ks) {
        if (k == 0) fail_input("beta_k needs k >= 1");
        r["beta_k"][std::to_string(k)] = number(beta_k(B, k));
      }
      for (auto k : mu_ks) {
        if (k == 0) fail_input("mu_k needs k >= 1");
        r["mu"][std::to_string(k)] = number(multiplicity_function(B, k));
      }
      if (want_mu_odd) r["mu_odd"] = number(mu_odd(B));
      for (double c : nu_cs) r["nu"][format_number(c)] = nu(B, c);
      if (want_spectrum || !any) {
        json s = json::array();
        for (double x : infinite_endpoint_spectrum(B)) s.push_back(number(x));
        r["spectrum"] = s;
      }
      emit(r.dump(2) + "\n", cfg.out);
    } else if (*rep) {
      if (list || scenario.empty()) {
        for (const auto& s : scenario_list()) std::printf("%2d %-20s %s\n", s.id, s.name, s.summary);
        return 0;
      }
      std::vector<int> ids;
      if (scenario == "all") {
        for (const auto& s : scenario_list()) ids.push_back(s.id);
      } else {
        int id = scenario_id(scenario);
        if (!id) fail_input("unknown scenario '" + scenario + "' (see reproduce --list)");
        ids.push_back(id);
      }
      for (int id : ids) {
        ScenarioResult r = run_scenario(id, cfg.seed);
        std::fputs(format_result(r).c_str(), stdout);
        if (!r.passed()) exit_code = 2;
      }
    } else if (*pmi) {
      Field f(pmi_field);
      if (f.p() == 2) fail_input("pmi needs an odd characteristic");
      auto load = [&]() -> ModuleRepWithAction {
        if (rectangle) return rectangle_pmi(*rectangle, f);
        if (input.empty()) fail_input("pmi needs an input file or --rectangle");
        if (module_action) return slice_action_from_json(read_text_file(input), f);
        if (action.empty()) fail_input("pmi on a cell list needs --action");
        auto in = open_input(input);
        FilteredComplex C = parse_complex(in, input);
        ComplexActionSpec spec = action_spec_from_json(read_text_file(action), C);
        return homology_action(C, spec.degree, spec.action, spec.order, f);
      };
      ModuleRepWithAction R = load();
      json r;
      r["field"] = f.p();
      r["order"] = R.order;
      r["module_barcode"] = json::parse(barcode_to_json(barcode(R.rep)));
      if (R.order == 2) {
        r["eigen_barcode"] = json::parse(barcode_to_json(barcode(eigenspace_submodule(R, f.p() - 1))));
        r["mu_odd"] = number(z4_obstruction_bound(R));
      }
      r["even_multiplicities"] = even_multiplicity_check(barcode(R.rep));
      emit(r.dump(2) + "\n", cfg.out);
    } else if (*len) {
      ExperimentConfig ec = config.empty() ? ExperimentConfig{} : experiment_config_from_json(read_text_file(config));
      if (seed_opt->count()) ec.seed = cfg.seed;
      if (slack_opt->count()) ec.slack_pct = cfg.slack_pct;
      if (ec.slack_pct < 0) fail_input("slack must be non-negative");
      std::mt19937_64 rng(ec.seed);
      std::size_t fails = 0;
      std::printf("%4s %6s %14s %14s %s\n", "#", "lambda", "ell", "rhs", "holds");
      for (std::size_t i = 0; i < ec.count; ++i) {
        int lambda = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(ec.lambda));
        TrigPolynomial2D p = TrigPolynomial2D::random(lambda, rng);
        LengthReport L = verify_length_inequality(p.sample(ec.grid, ec.grid), ec.slack_pct / 100);
        std::printf("%4zu %6d %14.6f %14.6f %s\n", i, lambda, L.ell, L.rhs, L.holds ? "yes" : "NO");
        if (!L.holds) ++fails;
      }
      std::printf("%zu of %zu within the bound\n", ec.count - fails, ec.count);
      if (fails) exit_code = 2;
    } else if (*sh) {
      std::printf("%10s %8s\n", "a", "degree");
      for (const auto& row : sh_table(as, dim_n, ratio)) {
        if (row.degree) std::printf("%10.6g %8d\n", row.a, *row.degree);
        else std::printf("%10.6g %8s\n", row.a, "-");
      }
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "persist: %s\n", e.what());
    return e.kind() == ErrorKind::input ? 1 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "persist: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
