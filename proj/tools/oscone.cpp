// oscone: classify correlation boxes, evaluate Bell functionals, reproduce
// the separation computations and solve the feasibility subproblems.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "oscone/box_io.hpp"
#include "oscone/boxes.hpp"
#include "oscone/convex.hpp"
#include "oscone/opsys.hpp"
#include "oscone/rng.hpp"
#include "oscone/tensorlab.hpp"

using nlohmann::json;
using namespace oscone;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIoError = 3;
constexpr int kExitUndecided = 4;

uint64_t default_seed() {
  if (const char* env = std::getenv("OSCONE_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<uint64_t>(v);
  }
  return 0;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

struct CheckPrinter {
  int failures = 0;
  void operator()(const std::string& name, bool ok, const std::string& expected,
                  const std::string& actual) {
    std::cout << (ok ? "  ok   " : "  FAIL ") << name << ": expected "
              << expected << ", actual " << actual << "\n";
    if (!ok) ++failures;
  }
};

void print_bell_report(const tensorlab::SqrtBellReport& rep) {
  std::cout << "lhs(d=0) = " << num(rep.lhs[0]) << "\n";
  std::cout << "lhs(d=2) = " << num(rep.lhs[1]) << "\n";
  std::cout << "rhs      = " << num(rep.rhs)
            << "   (outer-min variant " << num(rep.rhs_outer_min) << ")\n";
  std::cout << "S-table (rows (a,c), columns (j,k)):\n";
  for (int ai = 0; ai < 2; ++ai)
    for (int ci = 0; ci < 2; ++ci) {
      std::cout << "  S_{" << 2 * ai << "," << 2 * ci << "}:";
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          std::cout << " " << num(rep.s_table[ai][ci][j][k]);
      std::cout << "\n";
    }
}

json bell_report_to_json(const tensorlab::SqrtBellReport& rep) {
  json s = json::array();
  for (int ai = 0; ai < 2; ++ai)
    for (int ci = 0; ci < 2; ++ci) {
      json row;
      row["a"] = 2 * ai;
      row["c"] = 2 * ci;
      json vals = json::array();
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) vals.push_back(rep.s_table[ai][ci][j][k]);
      row["values"] = vals;
      s.push_back(row);
    }
  return json{{"lhs", {rep.lhs[0], rep.lhs[1]}},
              {"rhs", rep.rhs},
              {"rhs_outer_min", rep.rhs_outer_min},
              {"s_table", s},
              {"violated", rep.any_violated()}};
}

int cmd_classify(const std::string& path, double tol, int dim, int restarts,
                 uint64_t seed, bool as_json, bool strict) {
  boxes::Box box = boxes::Box::uniform();
  try {
    box = box_io::read_box_file(path);
  } catch (const box_io::BoxParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    const std::string what = e.what();
    return what.find("malformed JSON") != std::string::npos ? kExitIoError
                                                            : kExitInvalidInput;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }

  boxes::ClassifyOptions opt;
  opt.tol = tol;
  opt.witness_dim = dim;
  opt.restarts = restarts;
  opt.seed = seed;
  const boxes::ClassifyReport rep = boxes::classify(box, opt);

  if (as_json) {
    json j;
    j["P"] = rep.nonsignaling_p;
    j["L"] = rep.local;
    j["Q"] = boxes::to_string(rep.quantum);
    j["chsh"] = rep.chsh;
    j["sqrt_bell"] = bell_report_to_json(rep.bell);
    if (!rep.local) {
      j["local_gap_unit"] = rep.local_detail.gap_unit;
      j["local_gap_localmax2"] = rep.local_detail.gap_localmax2;
    }
    if (rep.witness) j["witness_dim"] = rep.witness->p;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "P:" << (rep.nonsignaling_p ? "yes" : "no");
    std::cout << " L:" << (rep.local ? "yes" : "no");
    std::cout << " Q:";
    switch (rep.quantum) {
      case boxes::QVerdict::yes_witness:
        std::cout << "yes(witness p=" << rep.witness->p << ")";
        break;
      case boxes::QVerdict::no_sqrt_bell:
        std::cout << "no(sqrt-Bell violated, lhs " << num(rep.bell.lhs[0])
                  << " rhs " << num(rep.bell.rhs) << ")";
        break;
      case boxes::QVerdict::undecided:
        std::cout << "undecided";
        break;
    }
    std::cout << "  chsh:" << num(rep.chsh) << "\n";
  }
  if (strict && rep.quantum == boxes::QVerdict::undecided) return kExitUndecided;
  return kExitOk;
}

int cmd_bell(const std::string& path, const std::string& inequality, int d,
             bool as_json) {
  boxes::Box box = boxes::Box::uniform();
  try {
    box = box_io::read_box_file(path);
  } catch (const box_io::BoxParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    const std::string what = e.what();
    return what.find("malformed JSON") != std::string::npos ? kExitIoError
                                                            : kExitInvalidInput;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }

  if (inequality == "chsh") {
    const double v = boxes::chsh_value(box);
    if (as_json)
      std::cout << json{{"inequality", "chsh"},
                        {"value", v},
                        {"local_bound", 2.0},
                        {"violated", std::abs(v) > 2.0 + 1e-12}}
                       .dump(2)
                << "\n";
    else
      std::cout << "chsh = " << num(v) << "  (local bound 2, violated: "
                << (std::abs(v) > 2.0 + 1e-12 ? "yes" : "no") << ")\n";
    return kExitOk;
  }

  const auto rep = tensorlab::sqrt_bell_value(boxes::box_to_matrix(box));
  const int didx = (d == 2) ? 1 : 0;
  if (as_json) {
    json j = bell_report_to_json(rep);
    j["d"] = d;
    j["violated_at_d"] = rep.violated(didx);
    std::cout << j.dump(2) << "\n";
  } else {
    print_bell_report(rep);
    std::cout << "verdict(d=" << d << "): "
              << (rep.violated(didx) ? "VIOLATED" : "not violated") << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Reproduction cases

int repro_sone(int grid) {
  CheckPrinter check;
  const double bound = 3.0 - 2.0 * std::sqrt(2.0);
  const auto scan = tensorlab::torus_min_eig(tensorlab::separation_element(), grid);
  check("torus min eigenvalue",
        scan.min_value >= bound - 1e-9 && scan.min_value <= bound + 1e-4,
        num(bound) + " (+1e-4/-1e-9)", num(scan.min_value));

  const auto obs = tensorlab::sone_obstruction(100, 0.01);
  check("parabola max", obs.parabola_max == -0.75, "-0.75", num(obs.parabola_max));
  check("parabola argmax", obs.parabola_argmax == 3.5, "3.5", num(obs.parabola_argmax));
  check("grid PSD hits", obs.grid_psd_hits == 0, "0", std::to_string(obs.grid_psd_hits));

  const auto rel = tensorlab::sone_relaxation(tensorlab::roots_of_unity(5));
  const auto rep = convex::solve_feasibility(rel, 1e-8, 50000);
  check("five-roots relaxation", rep.status == convex::SolveStatus::infeasible_evidence,
        "infeasible-evidence", convex::to_string(rep.status));
  check("relaxation gap", rep.gap_estimate > 1e-4, "> 1e-4", num(rep.gap_estimate));
  return check.failures == 0 ? kExitOk : 1;
}

int repro_qmatrix() {
  CheckPrinter check;
  const numerics::HermMatrix e11 = numerics::HermMatrix::diagonal({1.0, 0.0});
  const numerics::HermMatrix e22 = numerics::HermMatrix::diagonal({0.0, 1.0});
  const auto w = tensorlab::FactorWitness::make({e11, e22, e11, e22},
                                                {e11, e22, e11, e22});
  const auto constructed = tensorlab::max_cone_construct(w);
  const auto printed = tensorlab::displayed_q_matrix();
  check("witness reproduces the printed matrix",
        constructed.frobenius_distance(printed) == 0.0, "0",
        num(constructed.frobenius_distance(printed)));
  const auto rep = tensorlab::sqrt_bell_value(printed);
  check("lhs(0)", rep.lhs[0] == 2.0, "2", num(rep.lhs[0]));
  check("rhs", std::abs(rep.rhs - 2.0) < 1e-12, "2", num(rep.rhs));
  check("not violated", !rep.any_violated(), "not violated",
        rep.any_violated() ? "violated" : "not violated");
  return check.failures == 0 ? kExitOk : 1;
}

int repro_prbox() {
  CheckPrinter check;
  const auto rep = tensorlab::sqrt_bell_value(tensorlab::pr_matrix());
  check("lhs(0)", rep.lhs[0] == 2.0, "2", num(rep.lhs[0]));
  check("rhs", rep.rhs == 0.0, "0", num(rep.rhs));
  check("violated", rep.any_violated(), "violated",
        rep.any_violated() ? "violated" : "not violated");
  check("chsh of PR box", std::abs(boxes::chsh_value(boxes::Box::pr()) - 4.0) < 1e-12,
        "4", num(boxes::chsh_value(boxes::Box::pr())));
  const auto local = boxes::local_membership(boxes::Box::pr());
  check("PR non-local", !local.local, "non-local", local.local ? "local" : "non-local");
  check("separator gap (unit normal)", std::abs(local.gap_unit - 0.5) < 1e-6,
        "0.5", num(local.gap_unit));
  return check.failures == 0 ? kExitOk : 1;
}

int repro_chsh(uint64_t seed) {
  CheckPrinter check;
  const auto res = boxes::seesaw_maximize(boxes::chsh_functional(), 2, 20, seed);
  const double tsirelson = 2.0 * std::sqrt(2.0);
  check("seesaw value", res.value >= tsirelson - 1e-3 && res.value <= tsirelson + 1e-9,
        num(tsirelson) + " (+1e-9/-1e-3)", num(res.value));
  const auto box = boxes::strategy_to_box(res.strategy);
  const auto rep = boxes::classify(box);
  check("P", rep.nonsignaling_p, "yes", rep.nonsignaling_p ? "yes" : "no");
  check("L", !rep.local, "no", rep.local ? "yes" : "no");
  return check.failures == 0 ? kExitOk : 1;
}

int repro_ando(uint64_t seed) {
  CheckPrinter check;
  numerics::GeneralMatrix e12(2, 2);
  e12(0, 1) = 1.0;
  const double w = numerics::numerical_radius(e12);
  check("w(E12)", std::abs(w - 0.5) <= 1e-10, "0.5", num(w));

  // Verdict matches the predicate w(T) <= 1/2 on seeded random matrices.
  Rng rng(seed + 1);
  int agree = 0, total = 0;
  while (total < 40) {
    const int d = 2 + static_cast<int>(rng.uniform() * 4);
    numerics::GeneralMatrix t = random_general(rng, d, d);
    const double target = rng.uniform(0.1, 0.9);
    t = t * numerics::Complex(target / numerics::numerical_radius(t), 0.0);
    const double wt = numerics::numerical_radius(t);
    if (std::abs(wt - 0.5) < 1e-4) continue;
    ++total;
    convex::FeasibilityProblem p;
    const int m = p.add_psd_block("M", 2 * d, 0.0);
    p.add_subblock_constraint({{m, 0, 0, 1.0}, {m, d, d, 1.0}},
                              numerics::GeneralMatrix::identity(d));
    p.add_subblock_constraint({{m, 0, d, 1.0}}, t);
    const auto rep = convex::solve_feasibility(p, 1e-8, 50000);
    const bool feasible = rep.status == convex::SolveStatus::feasible;
    if (rep.status != convex::SolveStatus::undecided && feasible == (wt <= 0.5))
      ++agree;
  }
  check("Ando verdicts", agree == total, std::to_string(total) + "/" + std::to_string(total),
        std::to_string(agree) + "/" + std::to_string(total));
  return check.failures == 0 ? kExitOk : 1;
}

int repro_nc2(uint64_t seed) {
  CheckPrinter check;
  Rng rng(seed + 2);
  int agree = 0, total = 0;
  while (total < 200) {
    const double c0 = rng.uniform(0.0, 2.0);
    const double c1 = rng.uniform(-1.0, 1.0);
    const double c2 = rng.uniform(-1.0, 1.0);
    if (std::abs(c0 - (std::abs(c1) + std::abs(c2))) < 1e-4) continue;
    ++total;
    const auto rep = opsys::nc2_positivity(opsys::NC2Coeff::scalar(c0, c1, c2), 1e-6);
    const bool feasible = rep.status == convex::SolveStatus::feasible;
    if (rep.status != convex::SolveStatus::undecided &&
        feasible == opsys::nc2_scalar_criterion(c0, c1, c2))
      ++agree;
  }
  check("criterion matches", agree == total,
        std::to_string(total) + "/" + std::to_string(total),
        std::to_string(agree) + "/" + std::to_string(total));
  check("(3,1,1) feasible",
        opsys::nc2_positivity(opsys::NC2Coeff::scalar(3, 1, 1), 1e-6).status ==
            convex::SolveStatus::feasible,
        "feasible", "see above");
  return check.failures == 0 ? kExitOk : 1;
}

int repro_gamma() {
  CheckPrinter check;
  const auto ker = opsys::gamma_quotient({{1, 1, -1, -1}});
  const bool kernel_ok = ker.c0(0, 0).real() == 0.0 && ker.c1(0, 0).real() == 0.0 &&
                         ker.c2(0, 0).real() == 0.0;
  check("kernel direction (1,1,-1,-1) -> 0", kernel_ok, "(0,0,0)",
        "(" + num(ker.c0(0, 0).real()) + "," + num(ker.c1(0, 0).real()) + "," +
            num(ker.c2(0, 0).real()) + ")");
  const auto unit = opsys::gamma_quotient({{1, 1, 1, 1}});
  check("unit maps to unit", std::abs(unit.c0(0, 0).real() - 1.0) < 1e-15, "1",
        num(unit.c0(0, 0).real()));
  const auto e1 = opsys::gamma_quotient({{1, 0, 0, 0}});
  check("basis vector", e1.c0(0, 0).real() == 0.25 && e1.c1(0, 0).real() == 0.25 &&
                            e1.c2(0, 0).real() == 0.0,
        "(0.25,0.25,0)", "(" + num(e1.c0(0, 0).real()) + "," +
                             num(e1.c1(0, 0).real()) + "," + num(e1.c2(0, 0).real()) + ")");
  return check.failures == 0 ? kExitOk : 1;
}

int cmd_solve(const std::string& kind, const std::string& input_path, double delta,
              double tol, int max_iter, bool as_json, bool strict) {
  json input;
  {
    std::ifstream in(input_path);
    if (!in) {
      std::cerr << "error: cannot open " << input_path << "\n";
      return kExitIoError;
    }
    try {
      in >> input;
    } catch (const json::exception& e) {
      std::cerr << "error: malformed JSON: " << e.what() << "\n";
      return kExitIoError;
    }
  }

  convex::FeasibilityProblem problem;
  std::vector<std::string> names;
  try {
    if (kind == "ando") {
      const numerics::GeneralMatrix t = box_io::read_complex_matrix(input.at("T"));
      problem = tensorlab::ando_split_problem(t, delta);
      names = {"M"};
    } else if (kind == "split") {
      const numerics::HermMatrix t0 = box_io::read_hermitian_matrix(input.at("t0"));
      const numerics::GeneralMatrix t1 = box_io::read_complex_matrix(input.at("t1"));
      problem = tensorlab::s1_max_split_problem(t0, t1, delta);
      names = {"M"};
    } else if (kind == "nc2") {
      const numerics::HermMatrix c0 = box_io::read_hermitian_matrix(input.at("c0"));
      const numerics::HermMatrix c1 = box_io::read_hermitian_matrix(input.at("c1"));
      const numerics::HermMatrix c2 = box_io::read_hermitian_matrix(input.at("c2"));
      problem = opsys::nc2_positivity_problem({c0, c1, c2}, delta);
      names = {"P1", "P2", "P3", "P4"};
    } else {
      std::cerr << "error: unknown kind " << kind << "\n";
      return kExitInvalidInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  const convex::SolveReport rep = convex::solve_feasibility(problem, tol, max_iter);
  if (as_json) {
    std::cout << box_io::solve_report_to_json(rep, names).dump(2) << "\n";
  } else {
    std::cout << "status: " << convex::to_string(rep.status) << "\n";
    std::cout << "residual: " << num(rep.residual)
              << "  gap_estimate: " << num(rep.gap_estimate)
              << "  iterations: " << rep.iterations << "\n";
  }
  if (strict && rep.status == convex::SolveStatus::undecided) return kExitUndecided;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator-system cone laboratory"};
  app.require_subcommand(1);

  // classify
  std::string classify_path;
  double classify_tol = 1e-9;
  int classify_dim = 2, classify_restarts = 30;
  uint64_t seed = default_seed();
  bool classify_json = false, classify_strict = false;
  auto* classify = app.add_subcommand("classify", "classify a correlation box");
  classify->add_option("path", classify_path, "box JSON file")->required();
  classify->add_option("--tol", classify_tol, "membership tolerance");
  classify->add_option("--dim", classify_dim, "witness search dimension");
  classify->add_option("--restarts", classify_restarts, "witness search restarts");
  classify->add_option("--seed", seed, "random seed");
  classify->add_flag("--json", classify_json, "JSON output");
  classify->add_flag("--strict", classify_strict, "exit 4 on undecided verdicts");

  // bell
  std::string bell_path, bell_kind = "sqrt";
  int bell_d = 0;
  bool bell_json = false;
  auto* bell = app.add_subcommand("bell", "evaluate a Bell functional");
  bell->add_option("path", bell_path, "box JSON file")->required();
  bell->add_option("--inequality", bell_kind, "chsh or sqrt")
      ->check(CLI::IsMember({"chsh", "sqrt"}));
  bell->add_option("--d", bell_d, "diagonal block (0 or 2)")
      ->check(CLI::IsMember({0, 2}));
  bell->add_flag("--json", bell_json, "JSON output");

  // repro
  std::string repro_case;
  int repro_grid = 1440;
  auto* repro = app.add_subcommand("repro", "run a reproduction case");
  repro->add_option("case", repro_case, "sone|qmatrix|prbox|chsh|ando|nc2|gamma")
      ->required()
      ->check(CLI::IsMember({"sone", "qmatrix", "prbox", "chsh", "ando", "nc2", "gamma"}));
  repro->add_option("--grid", repro_grid, "torus grid size for sone");
  repro->add_option("--seed", seed, "random seed");

  // solve
  std::string solve_kind, solve_input;
  double solve_delta = 0.0, solve_tol = 1e-8;
  int solve_max_iter = 50000;
  bool solve_json = true, solve_strict = false;
  auto* solve = app.add_subcommand("solve", "solve a feasibility subproblem");
  solve->add_option("--kind", solve_kind, "split|ando|nc2")
      ->required()
      ->check(CLI::IsMember({"split", "ando", "nc2"}));
  solve->add_option("--input", solve_input, "JSON file with the matrices")->required();
  solve->add_option("--delta", solve_delta, "strictness margin");
  solve->add_option("--tol", solve_tol, "solver tolerance");
  solve->add_option("--max-iter", solve_max_iter, "iteration budget");
  solve->add_flag("--strict", solve_strict, "exit 4 on undecided verdicts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (classify->parsed())
      return cmd_classify(classify_path, classify_tol, classify_dim,
                          classify_restarts, seed, classify_json, classify_strict);
    if (bell->parsed()) return cmd_bell(bell_path, bell_kind, bell_d, bell_json);
    if (repro->parsed()) {
      std::cout << "repro " << repro_case << "\n";
      if (repro_case == "sone") return repro_sone(repro_grid);
      if (repro_case == "qmatrix") return repro_qmatrix();
      if (repro_case == "prbox") return repro_prbox();
      if (repro_case == "chsh") return repro_chsh(seed);
      if (repro_case == "ando") return repro_ando(seed);
      if (repro_case == "nc2") return repro_nc2(seed);
      if (repro_case == "gamma") return repro_gamma();
    }
    if (solve->parsed())
      return cmd_solve(solve_kind, solve_input, solve_delta, solve_tol,
                       solve_max_iter, solve_json, solve_strict);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
