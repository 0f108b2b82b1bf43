#include "kappaosc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "kappaosc/flip.hpp"
#include "kappaosc/kinematics.hpp"
#include "kappaosc/rng.hpp"
#include "kappaosc/shell_solver.hpp"

namespace kappaosc {

namespace {

constexpr double check_failed = std::numeric_limits<double>::infinity();

class SuiteRunner {
public:
    explicit SuiteRunner(const VerifyOptions& options) : options_(options) {}

    template <class Body>
    void bounded(const std::string& suite, const std::string& name, const std::string& relation,
                 double threshold, Body&& body) {
        run(suite, name, relation, "<=", threshold, std::forward<Body>(body),
            [](double residual, double limit) { return residual <= limit; });
    }

    template <class Body>
    void witness(const std::string& suite, const std::string& name, const std::string& relation,
                 double threshold, Body&& body) {
        run(suite, name, relation, ">", threshold, std::forward<Body>(body),
            [](double residual, double limit) { return residual > limit; });
    }

    std::vector<InvariantCheck> take() { return std::move(checks_); }

    const VerifyOptions& options() const { return options_; }

    KappaContext context(double kappa, double m0) const {
        KappaContext ctx;
        ctx.kappa = kappa;
        ctx.m0 = m0;
        ctx.tol_solver = 1e-13;
        ctx.max_iter = 200;
        return ctx;
    }
    KappaContext context() const { return context(options_.kappa, options_.m0); }

private:
    template <class Body, class Accept>
    void run(const std::string& suite, const std::string& name, const std::string& relation,
             const char* comparison, double threshold, Body&& body, Accept&& accept) {
        InvariantCheck check{suite, name, relation, comparison, 0.0, threshold, false, {}};
        try {
            check.residual = body();
            check.pass = accept(check.residual, threshold);
        } catch (const std::exception& e) {
            check.residual = check_failed;
            check.error = e.what();
            check.pass = false;
        }
        checks_.push_back(std::move(check));
    }

    VerifyOptions options_;
    std::vector<InvariantCheck> checks_;
};

Vec3 draw_momentum(SplitMix64& rng, double amp) { return rng.vec3(amp); }

// ---------------------------------------------------------------- kinematics

void kinematics_suite(SuiteRunner& r) {
    const auto& opt = r.options();

    r.bounded("kinematics", "shell_closure", "deformed mass-shell closure of the dispersion",
              1e-12, [&] {
                  SplitMix64 rng(opt.seed);
                  const KappaContext ctx = r.context();
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws; ++i) {
                      const Vec3 k = draw_momentum(rng, 10.0);
                      worst = std::fmax(
                          worst, shell_residual({omega_kappa(k, ctx), k}, ctx));
                  }
                  return worst;
              });

    r.bounded("kinematics", "classical_limit", "dispersion tends to the undeformed energy",
              1e-9, [&] {
                  SplitMix64 rng(opt.seed + 1);
                  KappaContext ctx = r.context(KappaContext::classical_regime, 0.0);
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws; ++i) {
                      ctx.m0 = rng.uniform(0.0, 10.0);
                      const Vec3 k = draw_momentum(rng, 10.0 / std::sqrt(3.0));
                      const double classical = std::sqrt(k.squared_norm() + ctx.m0 * ctx.m0);
                      if (classical == 0.0) continue;
                      worst = std::fmax(worst,
                                        std::fabs(omega_kappa(k, ctx) - classical) / classical);
                  }
                  return worst;
              });

    r.bounded("kinematics", "composition_associativity",
              "non-Abelian composition is associative", 1e-12, [&] {
                  SplitMix64 rng(opt.seed + 2);
                  const KappaContext ctx = r.context();
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws; ++i) {
                      const FourMomentum a{rng.uniform(0.0, 2.0), draw_momentum(rng, 2.0)};
                      const FourMomentum b{rng.uniform(0.0, 2.0), draw_momentum(rng, 2.0)};
                      const FourMomentum c{rng.uniform(0.0, 2.0), draw_momentum(rng, 2.0)};
                      const FourMomentum left = compose(compose(a, b, ctx), c, ctx);
                      const FourMomentum right = compose(a, compose(b, c, ctx), ctx);
                      worst = std::fmax(worst, relative_deviation(left.k, right.k));
                      worst = std::fmax(worst, relative_deviation(left.e, right.e));
                  }
                  return worst;
              });

    r.witness("kinematics", "composition_noncommutativity",
              "exchanged composition differs in the spatial part, energies agree", 0.1, [&] {
                  const KappaContext ctx = r.context(1.0, 1.0);
                  SplitMix64 rng(opt.seed + 15);
                  for (int i = 0; i < opt.draws; ++i) {
                      const Vec3 pk = rng.vec3(2.0);
                      const Vec3 qk = rng.vec3(2.0);
                      const FourMomentum p{omega_kappa(pk, ctx), pk};
                      const FourMomentum q{omega_kappa(qk, ctx), qk};
                      const FourMomentum pq = compose(p, q, ctx);
                      const FourMomentum qp = compose(q, p, ctx);
                      if (pq.e != qp.e) return 0.0;  // energies must match exactly
                      if (compose_flipped(p, q, ctx) != qp) return 0.0;
                      if (distance(pq.k, qp.k) <= 1e-12) return 0.0;
                  }
                  const FourMomentum p{1.0, {1.0, 0.0, 0.0}};
                  const FourMomentum q{1.0, {0.0, 1.0, 0.0}};
                  return distance(compose(p, q, ctx).k, compose(q, p, ctx).k);
              });

    r.witness("kinematics", "dispersion_monotonicity",
              "dispersion strictly increases with momentum magnitude", 0.0, [&] {
                  const KappaContext ctx = r.context();
                  double min_step = std::numeric_limits<double>::infinity();
                  double previous = omega_kappa({0.0, 0.0, 0.0}, ctx);
                  for (int i = 1; i <= 64; ++i) {
                      const double k = 0.25 * i;
                      const double value = omega_kappa({k, 0.0, 0.0}, ctx);
                      min_step = std::fmin(min_step, value - previous);
                      previous = value;
                  }
                  return min_step;
              });
}

// --------------------------------------------------------------- shell solver

void shell_solver_suite(SuiteRunner& r) {
    const auto& opt = r.options();

    r.bounded("shell-solver", "back_substitution",
              "solutions satisfy both coupled shell equations", 1e-12, [&] {
                  SplitMix64 rng(opt.seed + 3);
                  const KappaContext ctx = r.context();
                  const double half_kappa = 2.0 * ctx.kappa;
                  // Same-sign assignments only have solutions for momenta below
                  // the deformation scale; stay inside that region.
                  const double amp = 0.5 * std::fmin(1.0, ctx.kappa);
                  double worst = 0.0;
                  const std::array<ShellAssignment, 4> assignments{
                      ShellAssignment{+1, -1}, ShellAssignment{-1, +1}, ShellAssignment{+1, +1},
                      ShellAssignment{-1, -1}};
                  for (int i = 0; i < opt.draws; ++i) {
                      const Vec3 kp = draw_momentum(rng, amp);
                      const Vec3 kq = draw_momentum(rng, amp);
                      const ShellAssignment asg = assignments[i % assignments.size()];
                      const ShellSolution sol = solve_coupled(kp, kq, asg, ctx);
                      const double rp =
                          omega_kappa(kp * std::exp(asg.sign_p * sol.q0 / half_kappa), ctx) -
                          sol.p0;
                      const double rq =
                          omega_kappa(kq * std::exp(asg.sign_q * sol.p0 / half_kappa), ctx) -
                          sol.q0;
                      worst = std::fmax(worst, std::fmax(std::fabs(rp), std::fabs(rq)));
                  }
                  return worst;
              });

    r.bounded("shell-solver", "frame_consistency",
              "frame transform plus solve recovers the standard-shell energies", 1e-10, [&] {
                  SplitMix64 rng(opt.seed + 4);
                  const KappaContext ctx = r.context();
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws / 4 + 1; ++i) {
                      const Vec3 p = draw_momentum(rng, 2.0);
                      const Vec3 q = draw_momentum(rng, 2.0);
                      const double p0 = omega_kappa(p, ctx);
                      const double q0 = omega_kappa(q, ctx);
                      const auto [pk, qk] = transform_to_flip_frame(
                          {p0, p}, {q0, q}, FlipFrameVariant::pair_aa, ctx);
                      const ShellSolution sol = solve_coupled(pk, qk, {+1, -1}, ctx);
                      worst = std::fmax(worst, std::fabs(sol.p0 - p0));
                      worst = std::fmax(worst, std::fabs(sol.q0 - q0));
                  }
                  return worst;
              });

    r.bounded("shell-solver", "classical_rate",
              "solution error falls off linearly in the inverse deformation scale",
              std::log10(2.0), [&] {
                  const Vec3 kp{1.3, 0.2, 0.0};
                  const Vec3 kq{0.4, -1.1, 0.5};
                  auto error_at = [&](double kappa) {
                      const KappaContext ctx = r.context(kappa, 1.0);
                      const ShellSolution sol = solve_coupled(kp, kq, {+1, -1}, ctx);
                      const double cp = std::sqrt(kp.squared_norm() + 1.0);
                      const double cq = std::sqrt(kq.squared_norm() + 1.0);
                      return std::fabs(sol.p0 - cp) + std::fabs(sol.q0 - cq);
                  };
                  const double ratio = error_at(1e3) / error_at(1e6);
                  return std::fabs(std::log10(ratio) - 3.0);
              });

    r.bounded("shell-solver", "determinism", "identical inputs give identical solutions", 0.0,
              [&] {
                  const KappaContext ctx = r.context();
                  const Vec3 kp{0.7, -0.3, 0.1};
                  const Vec3 kq{-0.2, 0.9, 0.4};
                  const ShellSolution a = solve_coupled(kp, kq, {+1, -1}, ctx);
                  const ShellSolution b = solve_coupled(kp, kq, {+1, -1}, ctx);
                  return std::fabs(a.p0 - b.p0) + std::fabs(a.q0 - b.q0) +
                         std::fabs(static_cast<double>(a.iterations - b.iterations));
              });
}

// ---------------------------------------------------------------- osc algebra

void osc_algebra_suite(SuiteRunner& r) {
    const auto& opt = r.options();

    r.bounded("osc-algebra", "circ_associativity",
              "threefold product agrees with both bracketings", 1e-12, [&] {
                  SplitMix64 rng(opt.seed + 5);
                  const KappaContext ctx = r.context();
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws; ++i) {
                      std::array<OscFactor, 3> f{};
                      for (auto& x : f) {
                          const Vec3 k = draw_momentum(rng, 2.0);
                          x = creation(k, omega_kappa(k, ctx));
                      }
                      const Monomial nfold = circ_nfold(f, ctx);
                      const Monomial left = circ_monomials(circ_binary(f[0], f[1], ctx),
                                                           as_monomial(f[2]), ctx);
                      const Monomial right = circ_monomials(as_monomial(f[0]),
                                                            circ_binary(f[1], f[2], ctx), ctx);
                      for (const Monomial* other : {&left, &right}) {
                          for (std::size_t j = 0; j < 3; ++j) {
                              worst = std::fmax(worst,
                                                relative_deviation(nfold.factors[j].k,
                                                                   other->factors[j].k));
                          }
                      }
                  }
                  return worst;
              });

    r.bounded("osc-algebra", "exchange_symmetry",
              "equal-kind commutators vanish after exchange normalization", 1e-12, [&] {
                  SplitMix64 rng(opt.seed + 6);
                  const KappaContext ctx = r.context();
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws; ++i) {
                      const Vec3 pk = draw_momentum(rng, 2.0);
                      const Vec3 qk = draw_momentum(rng, 2.0);
                      const double p0 = omega_kappa(pk, ctx);
                      const double q0 = omega_kappa(qk, ctx);
                      for (const auto make : {creation, annihilation}) {
                          const OscFactor x = make(pk, p0);
                          const OscFactor y = make(qk, q0);
                          const TermSum comm = circ_commutator(x, y, ctx);
                          if (!comm.terms.empty()) return check_failed;
                          worst = std::fmax(
                              worst, max_label_deviation(TermSum{{circ_binary(x, y, ctx)}},
                                                         TermSum{{circ_binary(y, x, ctx)}}, ctx));
                      }
                  }
                  return worst;
              });

    r.bounded("osc-algebra", "momentum_compensation",
              "composed totals of product words are plain Abelian sums", 1e-12, [&] {
                  SplitMix64 rng(opt.seed + 7);
                  const KappaContext ctx = r.context();
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws; ++i) {
                      const Vec3 pk = draw_momentum(rng, 2.0);
                      const Vec3 qk = draw_momentum(rng, 2.0);
                      const double p0 = omega_kappa(pk, ctx);
                      const double q0 = omega_kappa(qk, ctx);
                      for (const auto make : {creation, annihilation}) {
                          const FourMomentum total =
                              composed_total(circ_binary(make(pk, p0), make(qk, q0), ctx), ctx);
                          worst = std::fmax(worst, relative_deviation(total.k, pk + qk));
                          worst = std::fmax(worst, relative_deviation(total.e, p0 + q0));
                      }
                  }
                  return worst;
              });

    r.bounded("osc-algebra", "neighbor_rescale_rule",
              "n-fold product equals the per-neighbor rescale rule", 1e-13, [&] {
                  SplitMix64 rng(opt.seed + 8);
                  const KappaContext ctx = r.context();
                  const double half_kappa = 2.0 * ctx.kappa;
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws / 4 + 1; ++i) {
                      std::vector<OscFactor> fs;
                      for (int n = 0; n < 5; ++n) {
                          const Vec3 k = draw_momentum(rng, 2.0);
                          fs.push_back(creation(k, omega_kappa(k, ctx)));
                      }
                      const Monomial nfold = circ_nfold(fs, ctx);
                      for (std::size_t j = 0; j < fs.size(); ++j) {
                          double factor = 1.0;
                          for (std::size_t l = 0; l < fs.size(); ++l) {
                              if (l < j) factor *= std::exp(-fs[l].e / half_kappa);
                              if (l > j) factor *= std::exp(+fs[l].e / half_kappa);
                          }
                          worst = std::fmax(worst, relative_deviation(nfold.factors[j].k,
                                                                      fs[j].k * factor));
                      }
                  }
                  return worst;
              });

    r.bounded("osc-algebra", "classical_degeneration",
              "deformed products reduce to plain concatenation classically", 1e-9, [&] {
                  SplitMix64 rng(opt.seed + 9);
                  const KappaContext ctx = r.context(KappaContext::classical_regime, 1.0);
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws; ++i) {
                      const Vec3 pk = draw_momentum(rng, 1.0 / std::sqrt(3.0));
                      const Vec3 qk = draw_momentum(rng, 1.0 / std::sqrt(3.0));
                      for (const auto kx : {OscKind::creation, OscKind::annihilation}) {
                          for (const auto ky : {OscKind::creation, OscKind::annihilation}) {
                              const OscFactor x{kx, pk, omega_kappa(pk, ctx)};
                              const OscFactor y{ky, qk, omega_kappa(qk, ctx)};
                              const Monomial w = circ_binary(x, y, ctx);
                              worst = std::fmax(worst, relative_deviation(w.factors[0].k, pk));
                              worst = std::fmax(worst, relative_deviation(w.factors[1].k, qk));
                          }
                      }
                  }
                  return worst;
              });
}

// ----------------------------------------------------------------------- flip

void flip_suite(SuiteRunner& r) {
    const auto& opt = r.options();

    auto coupled_pair = [](SplitMix64& rng, OscKind kx, OscKind ky, const KappaContext& ctx) {
        // Convergence region of the same-sign coupled systems.
        const double amp = 0.5 * std::fmin(1.0, ctx.kappa);
        const Vec3 kp = rng.vec3(amp);
        const Vec3 kq = rng.vec3(amp);
        const ShellSolution sol =
            assign_binary_shells(kind_sign(kx), kind_sign(ky), kp, kq, ctx);
        return std::pair<OscFactor, OscFactor>{{kx, kp, sol.p0}, {ky, kq, sol.q0}};
    };
    const std::array<std::pair<OscKind, OscKind>, 4> patterns{
        std::pair{OscKind::annihilation, OscKind::annihilation},
        std::pair{OscKind::annihilation, OscKind::creation},
        std::pair{OscKind::creation, OscKind::annihilation},
        std::pair{OscKind::creation, OscKind::creation}};

    r.bounded("flip", "tau_involution", "the flip squares to the identity", 1e-10, [&] {
        SplitMix64 rng(opt.seed + 10);
        const KappaContext ctx = r.context();
        double worst = 0.0;
        for (int i = 0; i < opt.draws / 4 + 1; ++i) {
            for (const auto& [kx, ky] : patterns) {
                const auto [x, y] = coupled_pair(rng, kx, ky, ctx);
                if (opt.inject_flip_fault) {
                    FlipResult once = tau_kappa(x, y, ctx);
                    once.word.factors[0].k = once.word.factors[0].k * (1.0 + 1e-6);
                    const FlipResult twice =
                        tau_kappa(once.word.factors[0], once.word.factors[1], ctx);
                    worst = std::fmax(worst,
                                      relative_deviation(twice.word.factors[0].k, x.k));
                } else {
                    worst = std::fmax(worst, tau_involution_check(x, y, ctx));
                }
            }
        }
        return worst;
    });

    r.bounded("flip", "conservation",
              "composed momentum and energy are invariant under the flip", 1e-10, [&] {
                  SplitMix64 rng(opt.seed + 11);
                  const KappaContext ctx = r.context();
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws / 4 + 1; ++i) {
                      for (const auto& [kx, ky] : patterns) {
                          const auto [x, y] = coupled_pair(rng, kx, ky, ctx);
                          const ConservationDefect d = flip_conservation(x, y, ctx);
                          worst = std::fmax(worst, std::fmax(d.momentum, d.energy));
                      }
                  }
                  return worst;
              });

    r.bounded("flip", "onshell_contrast",
              "standard-shell exchange breaks energy balance at finite deformation and "
              "restores it classically",
              1e-9, [&] {
                  const Vec3 p{1.0, 0.0, 0.0};
                  const Vec3 q{0.0, 2.0, 0.0};
                  KappaContext ctx = r.context(1.0, 1.0);
                  if (onshell_flip_energy_defect(p, q, ctx) <= 1e-3) return check_failed;
                  // The defect peaks near kappa = 2 for this pair and falls off
                  // like 1/kappa from there on; check the halving sequence in
                  // the falloff regime.
                  double previous = std::numeric_limits<double>::infinity();
                  for (double kappa = 2.0; kappa <= 64.0; kappa *= 2.0) {
                      ctx.kappa = kappa;
                      const double defect = onshell_flip_energy_defect(p, q, ctx);
                      if (defect >= previous) return check_failed;
                      previous = defect;
                  }
                  ctx.kappa = KappaContext::classical_regime;
                  return onshell_flip_energy_defect(p, q, ctx);
              });

    r.bounded("flip", "frame_round_trip",
              "frame transforms invert exactly and the mixed map rewrites the exchanged labels",
              1e-12, [&] {
                  SplitMix64 rng(opt.seed + 12);
                  const KappaContext ctx = r.context();
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws / 4 + 1; ++i) {
                      const Vec3 p = rng.vec3(2.0 / std::sqrt(3.0));
                      const Vec3 q = rng.vec3(2.0 / std::sqrt(3.0));
                      const double p0 = omega_kappa(p, ctx);
                      const double q0 = omega_kappa(q, ctx);
                      for (const auto variant : {FlipFrameVariant::pair_aa,
                                                 FlipFrameVariant::pair_cc,
                                                 FlipFrameVariant::pair_ca}) {
                          const auto [pk, qk] =
                              transform_to_flip_frame({p0, p}, {q0, q}, variant, ctx);
                          const auto [pr, qr] = transform_from_flip_frame(pk, qk, variant, ctx);
                          worst = std::fmax(worst, relative_deviation(pr, p));
                          worst = std::fmax(worst, relative_deviation(qr, q));
                      }
                      // Mixed pattern: the full-exponent map must land on the
                      // exchanged-word labels of the mixed relation, slots swapped.
                      const ShellSolution mixed = assign_binary_shells(
                          kind_sign(OscKind::annihilation), kind_sign(OscKind::creation), p, q,
                          ctx);
                      const auto [pp, qq] = transform_to_flip_frame(
                          {mixed.p0, p}, {mixed.q0, q}, FlipFrameVariant::inverse_ac, ctx);
                      const Vec3 exchanged_first = q * std::exp(-mixed.p0 / ctx.kappa);
                      const Vec3 exchanged_second = p * std::exp(+mixed.q0 / ctx.kappa);
                      worst = std::fmax(worst, relative_deviation(pp, exchanged_second));
                      worst = std::fmax(worst, relative_deviation(qq, exchanged_first));
                  }
                  return worst;
              });
}

// ------------------------------------------------------------------- clusters

void clusters_suite(SuiteRunner& r) {
    const auto& opt = r.options();
    const Grid2 grid = Grid2::uniform_1d(8, -2.0, 2.0);

    r.witness("clusters", "order_of_operations",
              "multiplying before integrating deforms the kernel", 1e-6, [&] {
                  const KappaContext ctx = r.context(1.0, 0.0);
                  const Amplitude2 input = default_packet_fixture(grid);
                  const Amplitude2 smeared = smear_cluster(input, grid, ctx, opt.convention);
                  return (smeared.values - input.values).norm();
              });

    r.witness("clusters", "metric_trend",
              "the factorizability defect shrinks as the deformation weakens", 0.0, [&] {
                  const Amplitude2 input = default_packet_fixture(grid);
                  double previous = std::numeric_limits<double>::infinity();
                  double min_margin = std::numeric_limits<double>::infinity();
                  for (const double kappa : {1.0, 4.0, 16.0}) {
                      const KappaContext ctx = r.context(kappa, 0.0);
                      const double metric = factorizability_metric(
                          smear_cluster(input, grid, ctx, opt.convention));
                      min_margin = std::fmin(min_margin, previous - metric);
                      previous = metric;
                  }
                  return min_margin;
              });

    r.bounded("clusters", "quadrature_stability",
              "doubling the grid moves the metric by less than ten percent", 0.10, [&] {
                  // Checked in the resolved regime (moderate deformation, fine
                  // grid); desk-scale 8-point grids are for trend checks only.
                  const KappaContext ctx = r.context(4.0, 0.0);
                  auto metric_at = [&](int n) {
                      const Grid2 g = Grid2::uniform_1d(n, -2.0, 2.0);
                      return factorizability_metric(
                          smear_cluster(default_packet_fixture(g), g, ctx, opt.convention));
                  };
                  const double coarse = metric_at(32);
                  const double fine = metric_at(64);
                  return std::fabs(fine - coarse) / coarse;
              });
}

// --------------------------------------------------------------- star product

void star_suite(SuiteRunner& r) {
    const auto& opt = r.options();

    r.bounded("starprod", "cross_factor_cancellation",
              "partner exponentials cancel inside the bilocal brackets", 1e-12, [&] {
                  const KappaContext ctx = r.context();
                  const Vec3 p{1.0, 0.0, 0.0};
                  double worst = 0.0;
                  for (const Vec3& q :
                       {Vec3{0.0, 0.0, 0.0}, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 2.0, 0.0}}) {
                      const PlaneWavePair pair = star_planewaves(p, q, ctx);
                      const std::complex<double> cross =
                          symbol_eigenvalue(SymbolName::laplace_x, pair, ctx) *
                          symbol_eigenvalue(SymbolName::shift_y, pair, ctx);
                      worst = std::fmax(worst,
                                        std::abs(cross + p.squared_norm()) /
                                            std::fmax(1.0, p.squared_norm()));
                      const std::complex<double> cross_y =
                          symbol_eigenvalue(SymbolName::laplace_y, pair, ctx) *
                          symbol_eigenvalue(SymbolName::shift_x, pair, ctx);
                      worst = std::fmax(worst,
                                        std::abs(cross_y + q.squared_norm()) /
                                            std::fmax(1.0, q.squared_norm()));
                  }
                  return worst;
              });

    r.bounded("starprod", "massless_annihilation",
              "both bilocal brackets vanish on the massless shell", 1e-12, [&] {
                  SplitMix64 rng(opt.seed + 13);
                  double worst = 0.0;
                  for (const double kappa : {0.5, 1.0, 10.0}) {
                      const KappaContext ctx = r.context(kappa, 0.0);
                      for (int i = 0; i < opt.draws / 3 + 1; ++i) {
                          const PlaneWavePair pair =
                              star_planewaves(rng.vec3(2.0), rng.vec3(2.0), ctx);
                          const BracketEigenvalues b =
                              bilocal_bracket_eigenvalues(pair, ctx, opt.massterm);
                          worst = std::fmax(worst, std::abs(b.bx));
                          worst = std::fmax(worst, std::abs(b.by));
                      }
                  }
                  return worst;
              });

    r.bounded("starprod", "time_shift_property",
              "the shift symbols equal the plane-wave translation factors", 1e-12, [&] {
                  const KappaContext ctx = r.context();
                  const PlaneWavePair pair =
                      star_planewaves({0.8, -0.1, 0.4}, {0.3, 1.1, 0.0}, ctx);
                  const std::complex<double> im_unit{0.0, 1.0};
                  const std::complex<double> sx =
                      symbol_eigenvalue(SymbolName::shift_x, pair, ctx) -
                      time_shift_factor(pair.p.e, -im_unit / ctx.kappa);
                  const std::complex<double> sy =
                      symbol_eigenvalue(SymbolName::shift_y, pair, ctx) -
                      time_shift_factor(pair.q.e, +im_unit / ctx.kappa);
                  return std::fmax(std::abs(sx), std::abs(sy));
              });

    r.bounded("starprod", "moyal_contrast",
              "constant-theta phase matches the closed form while its brackets factorize",
              1e-14, [&] {
                  const KappaContext ctx = r.context(1.0, 0.0);
                  ThetaMatrix theta{};
                  theta[0 * 4 + 1] = 1.0;
                  theta[1 * 4 + 0] = -1.0;
                  const FourMomentum p{1.0, {0.0, 0.0, 0.0}};
                  const FourMomentum q{std::sqrt(1.0 + 0.0), {1.0, 0.0, 0.0}};
                  const std::complex<double> phase = moyal_star_planewaves(p, q, theta, ctx);
                  const std::complex<double> expected =
                      std::exp(std::complex<double>{0.0, 1.0});
                  // Undeformed mass-shell symbols vanish for classical on-shell input.
                  const FourMomentum on_shell{std::sqrt(2.0), {1.0, 0.0, 0.0}};
                  if (std::fabs(moyal_kg_symbol(on_shell, 1.0)) > 1e-12) return check_failed;
                  return std::abs(phase - expected);
              });

    r.bounded("starprod", "circ_star_equivalence",
              "star kernel labels equal the relativistic product labels", 1e-10, [&] {
                  SplitMix64 rng(opt.seed + 14);
                  const KappaContext ctx = r.context();
                  double worst = 0.0;
                  for (int i = 0; i < opt.draws / 2 + 1; ++i) {
                      const Vec3 p{rng.uniform(-2.0, 2.0), 0.0, 0.0};
                      const Vec3 q{rng.uniform(-2.0, 2.0), 0.0, 0.0};
                      worst = std::fmax(worst, circ_star_equivalence(p, q, ctx).max_deviation);
                  }
                  return worst;
              });
}

// ------------------------------------------------------------------------ cli

void cli_suite(SuiteRunner& r, const std::vector<InvariantCheck>& so_far) {
    r.bounded("cli", "report_determinism",
              "identical options produce byte-identical reports", 0.0, [&] {
                  VerifyOptions probe;
                  probe.kappa = r.options().kappa;
                  probe.m0 = r.options().m0;
                  probe.seed = r.options().seed;
                  probe.draws = 8;
                  SuiteRunner a(probe), b(probe);
                  kinematics_suite(a);
                  kinematics_suite(b);
                  Json ja = Json::array(), jb = Json::array();
                  for (const auto& c : a.take()) ja.push_back(Json{{"n", c.name}, {"r", c.residual}});
                  for (const auto& c : b.take()) jb.push_back(Json{{"n", c.name}, {"r", c.residual}});
                  return ja.dump() == jb.dump() ? 0.0 : 1.0;
              });

    r.bounded("cli", "coverage", "every invariant is reported exactly once", 0.0, [&] {
        std::set<std::string> seen;
        double duplicates = 0.0;
        for (const auto& check : so_far) {
            if (!seen.insert(check.suite + "/" + check.name).second) duplicates += 1.0;
        }
        return duplicates;
    });
}

}  // namespace

std::vector<InvariantCheck> run_invariant_suites(const VerifyOptions& options) {
    SuiteRunner runner(options);
    kinematics_suite(runner);
    shell_solver_suite(runner);
    osc_algebra_suite(runner);
    flip_suite(runner);
    clusters_suite(runner);
    star_suite(runner);
    std::vector<InvariantCheck> checks = runner.take();

    SuiteRunner cli_runner(options);
    cli_suite(cli_runner, checks);
    for (auto& check : cli_runner.take()) checks.push_back(std::move(check));
    return checks;
}

Json verify_report(const VerifyOptions& options) {
    Json report;
    report["schema"] = 1;
    report["options"] = Json{{"kappa", options.kappa},
                             {"m0", options.m0},
                             {"seed", options.seed},
                             {"draws", options.draws},
                             {"exponent_convention",
                              options.convention == ExponentConvention::full ? "full" : "half"},
                             {"massterm",
                              options.massterm == MassTerm::augmented ? "on" : "off"}};
    report["checks"] = Json::array();
    bool all_pass = true;
    for (const InvariantCheck& check : run_invariant_suites(options)) {
        Json j;
        j["suite"] = check.suite;
        j["name"] = check.name;
        j["relation"] = check.relation;
        j["comparison"] = check.comparison;
        j["residual"] = std::isfinite(check.residual) ? Json(check.residual) : Json("inf");
        j["threshold"] = check.threshold;
        j["pass"] = check.pass;
        if (!check.error.empty()) j["error"] = check.error;
        report["checks"].push_back(std::move(j));
        all_pass = all_pass && check.pass;
    }
    report["all_pass"] = all_pass;
    return report;
}

}  // namespace kappaosc
