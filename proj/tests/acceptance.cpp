// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pwcheck/errors.hpp"
#include "pwcheck/pipeline.hpp"
#include "pwcheck/report_io.hpp"

using namespace pwcheck;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-32s %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

const std::vector<Complex> kTs{Complex(2.0, 0.5), Complex(0.3, 0.7), Complex(5.0, 0.0)};

// Criteria 1 and 2 share the same 27 runs per t.
struct SweepResult {
  bool windings_ok = true;
  int guarded = 0;
  int mismatches = 0;
  double seconds = 0.0;
  std::string windings;
};

const SweepResult& sweep() {
  static const SweepResult result = [] {
    SweepResult r;
    const auto start = std::chrono::steady_clock::now();
    for (const Complex t : kTs) {
      int first = 0;
      for (const char* mu : {"zero", "random:1", "random:2"}) {
        ExperimentConfig cfg;
        cfg.t = t;
        cfg.R_values = {1e2, 1e4, 1e6};
        cfg.samples = 360;
        cfg.mu = mu;
        const auto rep = run_verification(cfg);
        for (const auto& run : rep.runs) {
          if (first == 0) first = run.winding;
          if (std::abs(run.winding) != 1 || run.winding != first) r.windings_ok = false;
          r.guarded += run.guarded_samples;
          r.mismatches += run.mismatches;
        }
      }
      r.windings += (r.windings.empty() ? "" : " ") + std::to_string(first);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }();
  return result;
}

Outcome winding_certification() {
  const auto& s = sweep();
  return {s.windings_ok && s.seconds < 60.0,
          "windings per t {" + s.windings + "}, 81 runs in " + num(s.seconds) + " s (< 60)"};
}

Outcome arc_edges() {
  const auto& s = sweep();
  return {s.guarded > 0 && s.mismatches == 0,
          std::to_string(s.guarded - s.mismatches) + "/" + std::to_string(s.guarded) +
              " guarded samples on the predicted edge"};
}

Outcome period_oracle() {
  const auto tri = period_triangle(half_periods(PunctureConfig(Complex(4.0, 0.0))));
  const double ka = static_cast<double>(2.0L * oracle::complete_k(0.25L));
  const double kc = static_cast<double>(2.0L * oracle::complete_k(0.75L));
  const double ea = std::abs(std::abs(tri.a) - ka) / ka;
  const double ec = std::abs(std::abs(tri.c) - kc) / kc;
  const double eb = std::abs(tri.b - Complex(-tri.a.real(), -tri.c.imag())) / std::abs(tri.b);
  const double worst = std::max({ea, ec, eb});
  return {worst < 1e-8, "max relative error " + num(worst) + " (< 1e-8)"};
}

Outcome branch_parity() {
  oracle::Rng rng(2024);
  const PunctureConfig pc(Complex(2.0, 0.5));
  int ok = 0, total = 0;
  int per_class[3] = {0, 0, 0};
  double worst_zero = 0.0;
  while (total < 50) {
    // Cycle through enclosure classes so all three are represented.
    const int want = total % 3;
    const Complex c = rng.complex_in_box(2.5);
    const double r = rng.uniform(0.1, 2.5);
    const auto circle = circle_path(c, r);
    bool clear = true;
    int enclosed = 0;
    for (auto p : pc.branch_points()) {
      clear = clear && circle.distance_to(p) > 0.05;
      enclosed += winding_about(circle, p);
    }
    if (!clear || enclosed != want) continue;
    const int sign = rng.uniform(0.0, 1.0) < 0.5 ? 1 : -1;
    const auto res = integrate_branch_tracked(circle, pc, BranchState{sign});
    bool good = res.final_state.sign == (enclosed % 2 ? -sign : sign);
    if (enclosed == 0) {
      worst_zero = std::max(worst_zero, std::abs(res.value));
      good = good && std::abs(res.value) < 1e-10;
    }
    ok += good;
    ++per_class[enclosed];
    ++total;
  }
  return {ok == total, std::to_string(ok) + "/" + std::to_string(total) + " loops (" +
                           std::to_string(per_class[0]) + "/" + std::to_string(per_class[1]) +
                           "/" + std::to_string(per_class[2]) + " enclosing 0/1/2), max |I0| " +
                           num(worst_zero)};
}

Outcome homotopy() {
  double worst = 0.0;
  for (const Complex t : kTs) {
    const PunctureConfig pc(t);
    for (auto j : kAllPunctures) {
      const double small = 0.4 * auto_radius(pc, j);
      const auto a = integrate_branch_tracked(make_puncture_loop(pc, j, kDefaultBasepoint, small), pc, {});
      const auto b =
          integrate_branch_tracked(make_puncture_loop(pc, j, kDefaultBasepoint, 3 * small), pc, {});
      worst = std::max(worst, std::abs(a.value - b.value) / std::abs(a.value));
    }
  }
  return {worst < 1e-8, "max relative difference " + num(worst) + " over 9 loop pairs (< 1e-8)"};
}

Outcome critical_angles() {
  oracle::Rng rng(77);
  int good = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Complex a, b;
    do {
      a = rng.complex_in_box(3.0);
      b = rng.complex_in_box(3.0);
    } while (std::abs(a) < 0.1 || std::abs(b) < 0.1 || std::abs(a + b) < 0.1 ||
             std::abs((b / a).imag()) < 1e-2);
    const auto tri = PeriodTriangle::from_sides(a, b, -(a + b));
    const auto [ang, arcs] = arc_decomposition(tri);
    bool ok = true;
    for (int s = 0; s < 3; ++s) {
      const Complex side = tri.side(s);
      const double res = projected_length(side, ang[s]) / std::abs(side);
      worst = std::max(worst, res);
      ok = ok && res < 1e-12;
      const Complex u = tri.side((s + 1) % 3), v = tri.side((s + 2) % 3);
      const double lo = projected_length(u, ang[s] - 1e-3) - projected_length(v, ang[s] - 1e-3);
      const double hi = projected_length(u, ang[s] + 1e-3) - projected_length(v, ang[s] + 1e-3);
      ok = ok && lo * hi < 0.0;
    }
    good += ok;
  }
  return {good == 100, std::to_string(good) + "/100 triangles, max |Re|/|s| " + num(worst)};
}

Outcome cosh_oracle() {
  oracle::Rng rng(31);
  double worst = 0.0;
  int used = 0;
  for (int i = 0; i < 10000; ++i) {
    const double rho = rng.uniform(-30.0, 30.0);
    const double delta = rng.uniform(-30.0, 30.0);
    const auto ref = oracle::two_cosh(rho, delta);
    const auto got = cosh_log(rho, delta);
    const long double refmag = std::abs(ref);
    if (got.is_zero) {
      worst = std::max(worst, 1.0);
      continue;
    }
    const double rel_err =
        std::abs(std::expm1(static_cast<double>(got.logmag - std::log(refmag))));
    worst = std::max(worst, rel_err);
    ++used;
  }
  const auto huge = cosh_log(2e8, 1.0);
  const bool finite = !huge.is_zero && std::isfinite(static_cast<double>(huge.logmag)) &&
                      std::isfinite(huge.phase);
  return {worst < 1e-12 && finite && used == 10000,
          "max relative error " + num(worst) + " over " + std::to_string(used) +
              " samples; rho = 2e8 logmag " + num(static_cast<double>(huge.logmag))};
}

Outcome width_scaling() {
  ExperimentConfig cfg;
  const auto problem = prepare_problem(cfg);
  double lo = 1e300, hi = 0.0;
  std::array<double, 3> prev = transition_widths(problem, cfg, 1e4, cfg.vertex_threshold);
  for (double R : {4e4, 1.6e5, 6.4e5}) {
    const auto cur = transition_widths(problem, cfg, R, cfg.vertex_threshold);
    for (int j = 0; j < 3; ++j) {
      const double ratio = prev[j] / cur[j];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    prev = cur;
  }
  return {lo >= 1.8 && hi <= 2.2, "width(R)/width(4R) in [" + num(lo) + ", " + num(hi) +
                                      "] for 9 (R, angle) pairs"};
}

Outcome gap_scaling() {
  double worst = 0.0;
  for (const Complex t : kTs) {
    ExperimentConfig cfg;
    cfg.t = t;
    cfg.R_values = {1e4, 4e4, 1.6e5};
    const auto rep = run_verification(cfg);
    for (std::size_t i = 1; i < rep.runs.size(); ++i) {
      const double ratio = rep.runs[i].min_margin / rep.runs[i - 1].min_margin;
      worst = std::max(worst, std::abs(ratio / 2.0 - 1.0));
    }
  }
  return {worst <= 0.05, "max deviation of gap ratio from 2: " + num(100 * worst) + "% (<= 5%)"};
}

Outcome closure() {
  double worst = 0.0;
  std::vector<Complex> ts = kTs;
  for (Complex extra : {Complex(4.0, 0.0), Complex(-1.0, 1.0), Complex(0.5, -2.0), Complex(10.0, 3.0)})
    ts.push_back(extra);
  for (const Complex t : ts) {
    const auto tri = period_triangle(half_periods(PunctureConfig(t)));
    worst = std::max(worst, std::abs(tri.a + tri.b + tri.c) / tri.scale());
  }
  bool raised = false;
  try {
    PeriodTriangle::from_sides(Complex(1.0, 1.0), Complex(2.0, 2.0), Complex(-3.0, -3.0));
  } catch (const DegenerateTriangleError&) {
    raised = true;
  }
  return {worst < 1e-12 && raised, "max |a+b+c|/scale " + num(worst) + " over " +
                                       std::to_string(ts.size()) + " triangles; collinear " +
                                       (raised ? "rejected" : "accepted")};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("pwcheck_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    const auto path = dir / ("run" + std::to_string(i) + ".json");
    const std::string cmd = std::string(PWCHECK_CLI_PATH) +
                            " verify --t 2,0.5 --R-list 100,10000,1000000 --mu random:1 --json " +
                            path.string() + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      std::filesystem::remove_all(dir);
      return {false, "verify exited abnormally"};
    }
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    outputs[i] = os.str();
  }
  std::filesystem::remove_all(dir);
  return {!outputs[0].empty() && outputs[0] == outputs[1],
          std::to_string(outputs[0].size()) + " bytes, runs " +
              (outputs[0] == outputs[1] ? "identical" : "differ")};
}

}  // namespace

int main() {
  report(1, "winding certification", winding_certification);
  report(2, "arc-edge correspondence", arc_edges);
  report(3, "period oracle (t = 4)", period_oracle);
  report(4, "branch parity", branch_parity);
  report(5, "homotopy invariance", homotopy);
  report(6, "critical angles", critical_angles);
  report(7, "cosh oracle", cosh_oracle);
  report(8, "transition-width scaling", width_scaling);
  report(9, "dominance-gap scaling", gap_scaling);
  report(10, "closure and degeneracy", closure);
  report(11, "determinism", determinism);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
