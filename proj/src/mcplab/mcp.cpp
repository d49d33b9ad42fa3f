#include "mcplab/mcp.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "mcplab/errors.hpp"
#include "mcplab/parallel.hpp"
#include "mcplab/special.hpp"

namespace mcplab::mcp {
namespace {

constexpr double kPi = std::numbers::pi;

void require_regime(const riccati::Params& p) {
  riccati::require_valid(p);
  if (!(std::abs(p.c) < kPi)) throw RegimeError("density: requires |c| < pi");
}

std::vector<double> logspace(double lo_exp, double hi_exp, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i)
    out[i] = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (count - 1));
  return out;
}

std::array<double, 2> jacobian_pair(const riccati::Params& p, double s, const ode::Options& opts) {
  const riccati::BlockMatrices blocks = riccati::build_blocks(p);
  const Eigen::MatrixXd W = blocks.W(), R = blocks.R();
  const Eigen::MatrixXd W2R = W * W + R;
  const int d = static_cast<int>(W.rows());
  const int dd = d * d;
  ode::Rhs rhs = [&](double, const ode::State& y, ode::State& dy) {
    Eigen::Map<const Eigen::MatrixXd> A(y.data(), d, d);
    Eigen::Map<const Eigen::MatrixXd> Ad(y.data() + dd, d, d);
    Eigen::Map<Eigen::MatrixXd>(dy.data(), d, d) = Ad;
    Eigen::Map<Eigen::MatrixXd>(dy.data() + dd, d, d) = -2.0 * Ad * W - A * W2R;
  };
  ode::State y0 = ode::State::Zero(2 * dd);
  Eigen::Map<Eigen::MatrixXd>(y0.data() + dd, d, d).setIdentity();
  const ode::DenseSolution sol = ode::integrate(rhs, 0.0, y0, 1.0, opts);
  const ode::State ys = sol(s);
  const ode::State& y1 = sol.final_state();
  return {Eigen::Map<const Eigen::MatrixXd>(ys.data(), d, d).determinant(),
          Eigen::Map<const Eigen::MatrixXd>(y1.data(), d, d).determinant()};
}

template <class F>
double gl(int nodes, F&& f, double a, double b) {
  using boost::math::quadrature::gauss;
  if (nodes <= 20) return gauss<double, 20>::integrate(f, a, b);
  if (nodes <= 40) return gauss<double, 40>::integrate(f, a, b);
  if (nodes <= 60) return gauss<double, 60>::integrate(f, a, b);
  return gauss<double, 100>::integrate(f, a, b);
}

void require_set(const heisenberg::HeisenbergModel& model, const VelocitySet& set) {
  double max_c = 0.0;
  if (set.kind == VelocitySet::Kind::Ball) {
    if (!(set.radius > 0.0)) throw DomainError("velocity ball radius must be positive");
    max_c = model.eps * set.radius / 2.0;
  } else {
    if (!(set.max_horizontal > 0.0) || !(set.max_vertical >= 0.0))
      throw DomainError("velocity cylinder bounds must be positive");
    max_c = set.max_vertical / 2.0;
  }
  if (!std::isfinite(max_c)) throw DomainError("velocity set must be bounded");
}

}  // namespace

double mcp_bound(int n, double t) { return std::pow(1.0 - t, 2 * n + 3); }

double density(const riccati::Params& p, double t) {
  require_regime(p);
  if (!(t >= 0.0) || !(t < 1.0)) throw DomainError("density: t must lie in [0, 1)");
  const double j1 = riccati::jacobian_block1(p, 1.0);
  if (!(j1 > 0.0)) throw RegimeError("density: g(1) vanishes");
  if (t == 0.0) return 1.0;
  const double s = 1.0 - t;
  const double block3 =
      std::pow(special::sin_over(p.c, s) / special::sin_over(p.c, 1.0), 2 * p.n - 2);
  return riccati::jacobian_block1(p, s) / j1 * block3;
}

DensityReadings density_readings(const riccati::Params& p, double t) {
  require_regime(p);
  if (!(t >= 0.0) || !(t < 1.0)) throw DomainError("density: t must lie in [0, 1)");
  if (p.c == 0.0) throw DomainError("density_readings: the displayed terms need c != 0");
  const double b2 = p.b * p.b, c = p.c, s = 1.0 - t;
  DensityReadings r;
  r.block3 = std::pow(std::sin(c * s) / std::sin(c), 2 * p.n - 2);
  r.block1_printed = s * std::sin(c * s) * (s * b2 * c * std::cos(c * s) - (b2 + c * c)) /
                     (std::sin(c) * (b2 * c * std::cos(c) - (b2 + c * c)));
  r.sum_reading = r.block3 + r.block1_printed;
  r.product = density(p, t);
  return r;
}

void DensityProfile::write_csv(std::ostream& os) const {
  os << "b,c,t,density,bound,ratio\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < t.size(); ++i)
    os << params.b << ',' << params.c << ',' << t[i] << ',' << density[i] << ',' << bound[i]
       << ',' << ratio[i] << '\n';
  os.precision(old);
}

DensityProfile density_profile(const riccati::Params& p, const std::vector<double>& t_grid) {
  require_regime(p);
  DensityProfile out;
  out.params = p;
  for (double t : t_grid) {
    const double d = density(p, t);
    const double b = mcp_bound(p.n, t);
    out.t.push_back(t);
    out.density.push_back(d);
    out.bound.push_back(b);
    out.ratio.push_back(d / b);
  }
  return out;
}

ScanReport mcp_scan(int n, const Range& b, const Range& c, const Range& t, double tol,
                    int threads) {
  if (n < 1) throw DomainError("mcp_scan: n must be >= 1");
  if (!(tol >= 0.0)) throw DomainError("mcp_scan: tol must be >= 0");
  const std::vector<double> bs = b.values(), cs = c.values(), ts = t.values();
  for (double cv : cs)
    if (!(std::abs(cv) < kPi)) throw DomainError("mcp_scan: c range must lie inside (-pi, pi)");
  for (double tv : ts)
    if (!(tv >= 0.0 && tv < 1.0)) throw DomainError("mcp_scan: t range must lie inside [0, 1)");
  for (double bv : bs)
    if (!std::isfinite(bv)) throw DomainError("mcp_scan: b range must be finite");

  ScanReport rep;
  rep.n = n;
  rep.b_range = b;
  rep.c_range = c;
  rep.t_range = t;
  rep.tol = tol;
  rep.cells = bs.size() * cs.size() * ts.size();

  // One chunk per (b, c) pair row; results merged in grid order.
  const std::size_t rows = bs.size() * cs.size();
  struct Partial {
    GridPoint min{0, 0, 0, std::numeric_limits<double>::infinity()};
    std::size_t count = 0;
    std::vector<GridPoint> bad;
  };
  const std::size_t chunks = std::min<std::size_t>(rows, 256);
  std::vector<Partial> parts(chunks);
  parallel_chunks(rows, chunks, resolve_threads(threads),
                  [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
                    Partial& part = parts[chunk];
                    for (std::size_t r = lo; r < hi; ++r) {
                      const riccati::Params p{bs[r / cs.size()], cs[r % cs.size()], n};
                      for (double tv : ts) {
                        const double ratio = density(p, tv) / mcp_bound(n, tv);
                        const GridPoint g{p.b, p.c, tv, ratio};
                        if (ratio < part.min.ratio) part.min = g;
                        if (!(ratio >= 1.0 - tol)) {
                          ++part.count;
                          if (part.bad.size() < ScanReport::kMaxStoredViolations)
                            part.bad.push_back(g);
                        }
                      }
                    }
                  });
  rep.argmin = parts.front().min;
  for (const Partial& part : parts) {
    if (part.min.ratio < rep.argmin.ratio) rep.argmin = part.min;
    rep.violation_count += part.count;
    for (const GridPoint& g : part.bad)
      if (rep.violations.size() < ScanReport::kMaxStoredViolations) rep.violations.push_back(g);
  }
  rep.min_ratio = rep.argmin.ratio;
  return rep;
}

SharpnessReport sharpness_scan(int n, double t, int threads) {
  if (n < 1) throw DomainError("sharpness_scan: n must be >= 1");
  if (!(t > 0.0 && t < 1.0)) throw DomainError("sharpness_scan: t must lie in (0, 1)");
  SharpnessReport rep;
  rep.n = n;
  rep.t = t;
  rep.b_values.push_back(0.0);
  for (double v : logspace(-3, 4, 141)) rep.b_values.push_back(v);
  rep.c_values.push_back(0.0);
  for (double v : logspace(-8, -1, 36)) rep.c_values.push_back(v);
  for (int i = 1; i <= 200; ++i) rep.c_values.push_back(0.1 + (kPi - 1e-3 - 0.1) * i / 200.0);

  const std::size_t nb = rep.b_values.size(), nc = rep.c_values.size();
  std::vector<double> ratios(nb * nc);
  parallel_chunks(nb, nb, resolve_threads(threads), [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < nc; ++j)
        ratios[i * nc + j] =
            density({rep.b_values[i], rep.c_values[j], n}, t) / mcp_bound(n, t);
  });
  rep.infimum = std::numeric_limits<double>::infinity();
  rep.b0_slice_infimum = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      const double r = ratios[i * nc + j];
      if (r < rep.infimum) {
        rep.infimum = r;
        rep.argmin_b = rep.b_values[i];
        rep.argmin_c = rep.c_values[j];
      }
      if (i == 0) rep.b0_slice_infimum = std::min(rep.b0_slice_infimum, r);
    }
  return rep;
}

MonteCarloResult monte_carlo_contraction(const heisenberg::HeisenbergModel& model,
                                         const Eigen::VectorXd& x0, const VelocitySet& set,
                                         double t, const MonteCarloOptions& opts) {
  heisenberg::require_valid(model);
  require_set(model, set);
  const int n = model.n, d = model.dim();
  if (x0.size() != d || !x0.allFinite()) throw DomainError("x0 must have 2n+1 finite coordinates");
  if (!(t > 0.0 && t < 1.0)) throw DomainError("contraction: t must lie in (0, 1)");
  if (opts.samples < 1000) throw DomainError("contraction: at least 1000 samples required");
  if (opts.bootstrap < 2) throw DomainError("contraction: bootstrap needs at least 2 resamples");

  MonteCarloResult res;
  res.model = model;
  res.x0 = x0;
  res.set = set;
  res.t = t;
  res.options = opts;
  res.bound = mcp_bound(n, t);

  ode::Options ode_opts;
  ode_opts.rtol = opts.ode_tol;
  ode_opts.atol = opts.ode_tol * 1e-3;

  constexpr std::size_t kBlock = 1024;
  const std::size_t N = static_cast<std::size_t>(opts.samples);
  const std::size_t blocks = (N + kBlock - 1) / kBlock;
  std::vector<double> num(N, 0.0), den(N, 0.0);
  std::vector<char> ok(N, 0);

  parallel_chunks(blocks, blocks, resolve_threads(opts.threads),
                  [&](std::size_t blk, std::size_t, std::size_t) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(blk)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif;
    const std::size_t lo = blk * kBlock, hi = std::min(N, lo + kBlock);
    Eigen::VectorXd w(d);
    for (std::size_t i = lo; i < hi; ++i) {
      if (set.kind == VelocitySet::Kind::Ball) {
        for (int k = 0; k < d; ++k) w(k) = gauss(rng);
        w *= set.radius * std::pow(unif(rng), 1.0 / d) / w.norm();
      } else {
        Eigen::VectorXd h(2 * n);
        for (int k = 0; k < 2 * n; ++k) h(k) = gauss(rng);
        h *= set.max_horizontal * std::pow(unif(rng), 1.0 / (2 * n)) / h.norm();
        w(0) = (2.0 * unif(rng) - 1.0) * set.max_vertical / model.eps;
        w.tail(2 * n) = h;
      }
      const riccati::Params p = heisenberg::params_from_velocity(model, w);
      const auto tc = riccati::conjugate_time(p);
      if (tc && *tc <= 1.0) continue;
      const auto [a, b] = jacobian_pair(p, 1.0 - t, ode_opts);
      if (!(a > 0.0) || !(b > 0.0)) continue;
      num[i] = a;
      den[i] = b;
      ok[i] = 1;
    }
  });

  double sn = 0.0, sd = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    if (ok[i]) {
      ++res.accepted;
      sn += num[i];
      sd += den[i];
    } else {
      ++res.rejected;
    }
  }
  if (res.rejected > 0.01 * static_cast<double>(N))
    throw DomainError("contraction: more than 1% of sampled velocities pass a conjugate point");
  res.ratio = sn / sd;

  std::mt19937_64 boot(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> pick(0, N - 1);
  double m1 = 0.0, m2 = 0.0;
  for (int r = 0; r < opts.bootstrap; ++r) {
    double bn = 0.0, bd = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const std::size_t j = pick(boot);
      bn += num[j];
      bd += den[j];
    }
    const double q = bn / bd;
    m1 += q;
    m2 += q * q;
  }
  m1 /= opts.bootstrap;
  res.std_error = std::sqrt(std::max(0.0, (m2 / opts.bootstrap - m1 * m1) * opts.bootstrap /
                                              (opts.bootstrap - 1)));
  res.bound_holds = res.ratio >= res.bound * (1.0 - 3.0 * res.std_error);

  if (opts.quadrature_nodes > 0) {
    res.quadrature_ratio = quadrature_contraction(model, set, t, opts.quadrature_nodes);
    res.quadrature_agrees = std::abs(res.ratio - *res.quadrature_ratio) <= 3.0 * res.std_error;
  }
  return res;
}

double quadrature_contraction(const heisenberg::HeisenbergModel& model, const VelocitySet& set,
                              double t, int nodes) {
  heisenberg::require_valid(model);
  require_set(model, set);
  if (!(t > 0.0 && t < 1.0)) throw DomainError("contraction: t must lie in (0, 1)");
  const int n = model.n;
  const double eps = model.eps;

  // w = (w_0, w_H); the horizontal sphere contributes h^{2n-1} dh.
  auto integrand = [&](double w0, double h, double s) {
    const riccati::Params p{-eps * h / 2.0, eps * w0 / 2.0, n};
    return riccati::jacobian_closed_form(p, s) * std::pow(h, 2 * n - 1);
  };
  auto integrate2 = [&](double s) {
    auto inner = [&](double w0) {
      const double hmax = set.kind == VelocitySet::Kind::Ball
                              ? std::sqrt(std::max(0.0, set.radius * set.radius - w0 * w0))
                              : set.max_horizontal;
      return gl(nodes, [&](double h) { return integrand(w0, h, s); }, 0.0, hmax);
    };
    const double wmax =
        set.kind == VelocitySet::Kind::Ball ? set.radius : set.max_vertical / eps;
    return gl(nodes, inner, -wmax, wmax);
  };
  return integrate2(1.0 - t) / integrate2(1.0);
}

}  // namespace mcplab::mcp
