/*
 Copyright 2026 ausmamc contributors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include <atomic>
#include <cstdio>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "ausmamc/io.hpp"

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

struct SimulateArgs {
  std::string scenario;
  std::string controller = "ausmamc";
  std::string switching;
  std::string out;
  std::string summary;
  double dt = 0.0;
  double t_final = 0.0;
  int record_every = 0;
  bool hold = false;
};

struct SweepArgs {
  int grid = 20;
  double theta_min_deg = 5.0;
  double theta_max_deg = 355.0;
  std::string mode = "closed";
  std::string controller = "ausmamc";
  std::vector<double> axis = {1.0, 1.0, 1.0};
  double dt = 1e-3;
  double t_final = 20.0;
  int jobs = 1;
  std::string out;
};

std::vector<double> theta_grid_rad(const SweepArgs& args) {
  std::vector<double> grid;
  const int n = std::max(args.grid, 1);
  for (int i = 0; i < n; ++i) {
    const double frac = n == 1 ? 0.5 : static_cast<double>(i) / (n - 1);
    grid.push_back((args.theta_min_deg + frac * (args.theta_max_deg - args.theta_min_deg)) *
                   kDegToRad);
  }
  return grid;
}

ausmamc::ScenarioConfig sweep_scenario(double theta0_rad, const ausmamc::Vec3& axis,
                                       const SweepArgs& args) {
  ausmamc::ScenarioConfig sc = ausmamc::preset_scenario_a();
  char name[64];
  std::snprintf(name, sizeof(name), "sweep-theta0-%.4fdeg", theta0_rad * kRadToDeg);
  sc.name = name;
  const ausmamc::Quaternion q_e0(std::cos(theta0_rad / 2.0),
                                 axis * std::sin(theta0_rad / 2.0));
  sc.q_desired = ausmamc::conjugate(q_e0);  // q(0) = identity, so q_e(0) = q_d*
  sc.controller.type = args.controller == "baseline" ? ausmamc::ControllerType::baseline
                                                     : ausmamc::ControllerType::ausmamc;
  sc.sim.dt = args.dt;
  sc.sim.t_final = args.t_final;
  return sc;
}

int run_simulate(const SimulateArgs& args, const CLI::App& cmd) {
  ausmamc::ScenarioConfig sc = ausmamc::load_scenario(args.scenario);
  sc.controller.type = args.controller == "baseline" ? ausmamc::ControllerType::baseline
                                                     : ausmamc::ControllerType::ausmamc;
  if (cmd.count("--switch") > 0) {
    sc.controller.switching = args.switching == "exact_sign"
                                  ? ausmamc::SwitchingMode::exact_sign
                                  : ausmamc::SwitchingMode::smoothed;
  }
  if (cmd.count("--dt") > 0) sc.sim.dt = args.dt;
  if (cmd.count("--tfinal") > 0) sc.sim.t_final = args.t_final;
  if (cmd.count("--record-every") > 0) sc.sim.record_every = args.record_every;
  if (args.hold) sc.sim.controller_hold = true;

  for (const auto& warning : ausmamc::validate_scenario(sc).warnings) {
    std::fprintf(stderr, "warning: %s\n", warning.c_str());
  }

  const ausmamc::Trajectory traj = ausmamc::run(sc);
  const ausmamc::RunMetrics metrics = ausmamc::compute_metrics(traj);
  ausmamc::emit_csv(traj, args.out);
  ausmamc::emit_summary(metrics, traj, sc, args.summary);

  std::printf("scenario %s  controller %s  dt %g  t_final %g\n", sc.name.c_str(),
              ausmamc::controller_type_name(sc.controller.type), sc.sim.dt,
              sc.sim.t_final);
  std::printf("  theta(0) %.4f deg, travel %.4f deg, unwinding: %s\n",
              metrics.theta_initial * kRadToDeg, metrics.theta_travel * kRadToDeg,
              metrics.unwinding_detected ? "yes" : "no");
  if (metrics.surface_reach_time) {
    std::printf("  surface reach %.3f s\n", *metrics.surface_reach_time);
  } else {
    std::printf("  surface reach: not reached\n");
  }
  if (metrics.settling_time) {
    std::printf("  settled %.3f s\n", *metrics.settling_time);
  } else {
    std::printf("  settled: not within t_final\n");
  }
  std::printf("  wrote %s, %s\n", args.out.c_str(), args.summary.c_str());
  return 0;
}

int run_sweep_closed(const SweepArgs& args) {
  const std::vector<double> grid = theta_grid_rad(args);
  ausmamc::Vec3 axis(args.axis[0], args.axis[1], args.axis[2]);
  if (axis.norm() == 0.0) {
    throw ausmamc::ValidationError("sweep axis must be nonzero");
  }
  axis.normalize();

  struct Row {
    double theta0_deg = 0.0;
    ausmamc::RunMetrics metrics;
    double final_qe0 = 0.0;
  };
  std::vector<Row> rows(grid.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
      const ausmamc::ScenarioConfig sc = sweep_scenario(grid[i], axis, args);
      const ausmamc::Trajectory traj = ausmamc::run(sc);
      rows[i].theta0_deg = grid[i] * kRadToDeg;
      rows[i].metrics = ausmamc::compute_metrics(traj);
      rows[i].final_qe0 = traj.samples.back().q_e.q0;
    }
  };
  const int jobs = std::max(args.jobs, 1);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::printf("closed-loop sweep: %zu initial angles, controller %s\n", grid.size(),
              args.controller.c_str());
  std::printf("%10s %10s %12s %12s %12s %10s\n", "theta0", "unwinding", "travel_deg",
              "viol_deg", "settle_s", "qe0_end");
  int unwinding_cases = 0;
  std::string csv =
      "theta0_deg,unwinding,theta_travel_deg,monotone_violation_deg,settling_time_s,"
      "surface_reach_time_s,final_qe0\n";
  for (const auto& row : rows) {
    const auto& m = row.metrics;
    unwinding_cases += m.unwinding_detected ? 1 : 0;
    std::printf("%10.3f %10s %12.4f %12.5f %12s %10.6f\n", row.theta0_deg,
                m.unwinding_detected ? "yes" : "no", m.theta_travel * kRadToDeg,
                m.monotone_violation * kRadToDeg,
                m.settling_time ? std::to_string(*m.settling_time).c_str() : "-",
                row.final_qe0);
    csv += ausmamc::detail::format_g17(row.theta0_deg) + ",";
    csv += m.unwinding_detected ? "1," : "0,";
    csv += ausmamc::detail::format_g17(m.theta_travel * kRadToDeg) + ",";
    csv += ausmamc::detail::format_g17(m.monotone_violation * kRadToDeg) + ",";
    csv += (m.settling_time ? ausmamc::detail::format_g17(*m.settling_time) : "") + ",";
    csv += (m.surface_reach_time ? ausmamc::detail::format_g17(*m.surface_reach_time) : "") + ",";
    csv += ausmamc::detail::format_g17(row.final_qe0) + "\n";
  }
  std::printf("unwinding cases: %d / %zu\n", unwinding_cases, grid.size());
  if (!args.out.empty()) {
    ausmamc::write_file(args.out, csv);
    std::printf("wrote %s\n", args.out.c_str());
  }
  return 0;
}

int run_sweep_sliding(const SweepArgs& args) {
  ausmamc::SlidingOptions opts;
  opts.dt = args.dt;
  opts.t_final = args.t_final;
  ausmamc::Vec3 axis(args.axis[0], args.axis[1], args.axis[2]);
  if (axis.norm() == 0.0) {
    throw ausmamc::ValidationError("sweep axis must be nonzero");
  }
  opts.axis = axis.normalized();

  const auto verdicts =
      ausmamc::sliding_phase_check(theta_grid_rad(args), ausmamc::AusmamcParams{}, opts);
  std::printf("ideal-sliding sweep: %zu initial angles\n", verdicts.size());
  std::printf("%10s %10s %14s %14s %12s\n", "theta0", "monotone", "excursion_deg",
              "final_deg", "equilibrium");
  std::string csv =
      "theta0_deg,monotone,max_counter_excursion_deg,max_v1_increase,final_theta_deg,"
      "equilibrium\n";
  bool all_ok = true;
  for (const auto& v : verdicts) {
    const char* eq = v.equilibrium == ausmamc::Equilibrium::zero     ? "0"
                     : v.equilibrium == ausmamc::Equilibrium::two_pi ? "2pi"
                                                                     : "none";
    all_ok = all_ok && v.monotone;
    std::printf("%10.3f %10s %14.6f %14.5f %12s\n", v.theta0 * kRadToDeg,
                v.monotone ? "yes" : "NO", v.max_counter_excursion * kRadToDeg,
                v.final_theta * kRadToDeg, eq);
    csv += ausmamc::detail::format_g17(v.theta0 * kRadToDeg) + ",";
    csv += v.monotone ? "1," : "0,";
    csv += ausmamc::detail::format_g17(v.max_counter_excursion * kRadToDeg) + ",";
    csv += ausmamc::detail::format_g17(v.max_v1_increase) + ",";
    csv += ausmamc::detail::format_g17(v.final_theta * kRadToDeg) + ",";
    csv += std::string(eq) + "\n";
  }
  std::printf("monotone toward the near equilibrium: %s\n", all_ok ? "all" : "VIOLATIONS");
  if (!args.out.empty()) {
    ausmamc::write_file(args.out, csv);
    std::printf("wrote %s\n", args.out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ausmamc: rest-to-rest rigid-spacecraft attitude maneuvers under an "
      "anti-unwinding sliding-mode controller"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand("simulate", "integrate one maneuver");
  simulate->add_option("--scenario", sim_args.scenario, "A, B, or a config-file path")
      ->required();
  simulate->add_option("--controller", sim_args.controller, "control law")
      ->required()
      ->check(CLI::IsMember({"ausmamc", "baseline"}));
  simulate->add_option("--dt", sim_args.dt, "integration step, s")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--tfinal", sim_args.t_final, "simulated duration, s")
      ->check(CLI::NonNegativeNumber);
  simulate->add_flag("--hold", sim_args.hold,
                     "hold the torque over each step instead of re-evaluating the "
                     "controller at every integrator stage");
  simulate->add_option("--record-every", sim_args.record_every, "sample decimation")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--switch", sim_args.switching, "switching-term mode")
      ->check(CLI::IsMember({"smooth", "exact_sign"}));
  simulate->add_option("--out", sim_args.out, "trajectory CSV path")->required();
  simulate->add_option("--summary", sim_args.summary, "run-summary JSON path")
      ->required();

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run a grid of initial rotation angles theta(0)");
  sweep->add_option("--theta-grid", sweep_args.grid, "number of grid points")
      ->required()
      ->check(CLI::PositiveNumber);
  sweep->add_option("--theta-min-deg", sweep_args.theta_min_deg, "grid start, deg");
  sweep->add_option("--theta-max-deg", sweep_args.theta_max_deg, "grid end, deg");
  sweep->add_option("--mode", sweep_args.mode,
                    "closed: full closed loop; sliding: ideal sliding kinematics")
      ->check(CLI::IsMember({"closed", "sliding"}));
  sweep->add_option("--controller", sweep_args.controller, "control law (closed mode)")
      ->check(CLI::IsMember({"ausmamc", "baseline"}));
  sweep->add_option("--axis", sweep_args.axis, "rotation axis (3 components)")
      ->expected(3);
  sweep->add_option("--dt", sweep_args.dt, "integration step, s")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--tfinal", sweep_args.t_final, "simulated duration, s")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--jobs", sweep_args.jobs, "worker threads (closed mode)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--out", sweep_args.out, "per-angle results CSV path");

  std::string compare_a, compare_b;
  CLI::App* compare = app.add_subcommand("compare", "compare two run summaries");
  compare->add_option("summary_a", compare_a, "first summary JSON")->required();
  compare->add_option("summary_b", compare_b, "second summary JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(sim_args, *simulate);
    }
    if (sweep->parsed()) {
      return sweep_args.mode == "sliding" ? run_sweep_sliding(sweep_args)
                                          : run_sweep_closed(sweep_args);
    }
    if (compare->parsed()) {
      const auto report = ausmamc::compare_summaries(ausmamc::load_summary(compare_a),
                                                     ausmamc::load_summary(compare_b));
      std::fputs(report.to_string().c_str(), stdout);
      return 0;
    }
  } catch (const ausmamc::DivergedRunError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ausmamc::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const ausmamc::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
