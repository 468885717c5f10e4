#include "naesat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace naesat::bounds {

namespace {

Real log2l_checked(Real x) {
  if (!(x > 0)) fail(errc::precondition_violated, "logarithm of a non-positive value");
  return std::log2(x);
}

Rational int_pow_signed(const Rational& base, int exp) { return rat_pow(base, static_cast<unsigned long>(exp)); }

}  // namespace

Real liu_ck(int k) {
  if (k < 3 || k > 16) fail(errc::infeasible_parameters, "liu_ck defined for 3 <= k <= 16");
  Real c = std::pow(3.0L, std::log(4.0L / 3.0L) / std::log(64.0L / 21.0L));
  for (int kk = 4; kk <= k; ++kk) {
    const Real prev = c;
    const Real ratio = std::pow(static_cast<Real>(kk - 2) / static_cast<Real>(2 * kk - 2),
                                static_cast<Real>(kk));
    const Real num = log2l_checked(static_cast<Real>(2 * kk - 2)) - log2l_checked(static_cast<Real>(kk)) -
                     log2l_checked(prev);
    const Real den = log2l_checked(std::pow(2.0L, static_cast<Real>(kk)) - 1.0L) -
                     log2l_checked(1.0L - ratio) - static_cast<Real>(kk) * log2l_checked(prev);
    const Real nu = num / den;
    c = std::pow(std::pow(2.0L, static_cast<Real>(kk)) - 1.0L, nu) *
        std::pow(prev, 1.0L - static_cast<Real>(kk) * nu);
  }
  return c;
}

LpSolution lp_closed_form(int k) {
  if (k < 3 || k > 16) fail(errc::infeasible_parameters, "pair LP defined for 3 <= k <= 16");
  const Rational denom = int_pow_signed(Rational(2 * k - 2), k) - 2 * int_pow_signed(Rational(k - 2), k) +
                         int_pow_signed(Rational(-2), k);
  if (denom <= 0) fail(errc::singular_system, "closed-form denominator must be positive");

  LpSolution sol;
  sol.k = k;
  sol.lambda = (int_pow_signed(Rational(k), k) + int_pow_signed(Rational(-k, k - 1), k)) / denom;
  sol.lambda.canonicalize();
  sol.pi_by_distance.assign(static_cast<std::size_t>(k) + 1, Rational(0));
  const Rational scale = int_pow_signed(Rational(k - 1), k) / denom;
  const Rational root(-1, k - 1);
  for (int y = 1; y <= k - 1; ++y) {
    Rational v = scale * (Rational(1) - int_pow_signed(root, y)) * (Rational(1) - int_pow_signed(root, k - y));
    v.canonicalize();
    sol.pi_by_distance[static_cast<std::size_t>(y)] = v;
  }
  return sol;
}

DetBound nae_det_bound(int k) {
  if (k < 3 || k > 16) fail(errc::infeasible_parameters, "nae_det_bound defined for 3 <= k <= 16");
  const Real c_prev = k == 3 ? 1.0L : liu_ck(k - 1);  // c_2 = 1 convention

  const Real lambda_num = to_long_double(int_pow_signed(Rational(k), k) + int_pow_signed(Rational(-k, k - 1), k));
  const Real lambda_den = to_long_double(int_pow_signed(Rational(2 * k - 2), k) -
                                         2 * int_pow_signed(Rational(k - 2), k) + int_pow_signed(Rational(-2), k));

  const Real num = log2l_checked(static_cast<Real>(2 * k - 2)) - log2l_checked(static_cast<Real>(k)) -
                   log2l_checked(c_prev);
  const Real den = log2l_checked(std::pow(2.0L, static_cast<Real>(k)) - 2.0L) + log2l_checked(lambda_num) +
                   static_cast<Real>(k) *
                       log2l_checked(static_cast<Real>(2 * k - 2) / (static_cast<Real>(k) * c_prev)) -
                   log2l_checked(lambda_den);
  DetBound out;
  out.nu = num / den;
  out.base = std::pow(std::pow(2.0L, static_cast<Real>(k)) - 2.0L, out.nu) *
             std::pow(c_prev, 1.0L - static_cast<Real>(k) * out.nu);
  return out;
}

Real hirsch_base(int k, Real delta) {
  if (k < 2 || delta < 0 || delta > 1) fail(errc::infeasible_parameters, "need k >= 2, delta in [0,1]");
  return 2.0L - (2.0L - 2.0L * delta) / (static_cast<Real>(2 * k) - static_cast<Real>(k) * delta);
}

Rational xi(int k, const Rational& eta, Mode mode) {
  if (mode == Mode::sat) {
    if (k < 2) fail(errc::infeasible_parameters, "xi needs k >= 2");
    if (eta < 1 || eta > k) fail(errc::eta_out_of_range, "sat mode needs eta in [1, k]");
    const Rational p = rat_pow(Rational(2), static_cast<unsigned long>(k - 1));
    Rational v = (p * (eta + (k - 2)) - eta + 1) / (2 * p * (k - 1));
    v.canonicalize();
    return v;
  }
  if (k == 2) return Rational(1, 2);
  if (k < 2) fail(errc::infeasible_parameters, "xi needs k >= 2");
  if (eta < 2 || eta > k) fail(errc::eta_out_of_range, "nae mode needs eta in [2, k]");
  const Rational p = rat_pow(Rational(2), static_cast<unsigned long>(k - 1));
  Rational v = (p * (eta + (k - 4)) - 2 * eta + 4) / (2 * p * (k - 2));
  v.canonicalize();
  return v;
}

Rational theta_from_eta(int k, const Rational& eta, Mode mode) {
  if (mode == Mode::nae) {
    if (k == 2) return Rational(2);
    if (k < 2) fail(errc::infeasible_parameters, "theta needs k >= 2");
    if (eta < 2 || eta > k) fail(errc::eta_out_of_range, "nae mode needs eta in [2, k]");
    if (eta == 2) return Rational(2);
    const Rational p = rat_pow(Rational(2), static_cast<unsigned long>(k - 2));
    const Rational rhs = Rational(1) / (eta - 2) + (p - 1) / (Rational(k - 2) * p);
    Rational theta = Rational(2) + Rational(2) / rhs;
    theta.canonicalize();
    return std::min(theta, Rational(k));
  }
  if (k < 2) fail(errc::infeasible_parameters, "theta needs k >= 2");
  if (eta < 1 || eta > k) fail(errc::eta_out_of_range, "sat mode needs eta in [1, k]");
  if (eta == 1) return Rational(1);
  const Rational p = rat_pow(Rational(2), static_cast<unsigned long>(k - 1));
  const Rational rhs = Rational(1) / (eta - 1) + (p - 1) / (Rational(k - 1) * p);
  Rational theta = Rational(1) + Rational(2) / rhs;
  theta.canonicalize();
  return std::min(theta, Rational(k));
}

Real walk_base(int k, Real delta, Real xi_value) {
  if (xi_value <= 0 || xi_value > 1 || delta < 0 || delta > 1)
    fail(errc::infeasible_parameters, "need xi in (0,1], delta in [0,1]");
  if (delta == 1) return 2.0L;  // numerator vanishes
  return 2.0L - 2.0L * (1.0L - delta) / (static_cast<Real>(k) * (1.0L / xi_value - delta));
}

Real guess_base(Real theta, Real delta) {
  if (theta < 1 || delta < 0 || delta > 1)
    fail(errc::infeasible_parameters, "need theta >= 1, delta in [0,1]");
  return std::pow(2.0L, theta / (1.0L - delta + theta));
}

namespace {

Real p_delta_of(int k, Real delta, Real xi_value) {
  if (delta == 1) return 0.0L;
  return (1.0L - delta) / (static_cast<Real>(k) * (1.0L / xi_value - delta));
}

struct CurveEval {
  Real walk;
  Real guess;
  Real theta;
  Real xi;
};

CurveEval eval_curves(int k, Real delta, Mode mode, Real eta) {
  Rational eta_q(std::min(std::max(static_cast<double>(eta), 0.0), static_cast<double>(k)));
  eta_q.canonicalize();
  const Rational lo = mode == Mode::nae ? Rational(2) : Rational(1);
  if (eta_q < lo) eta_q = lo;
  CurveEval ev;
  ev.xi = to_long_double(xi(k, eta_q, mode));
  ev.theta = to_long_double(theta_from_eta(k, eta_q, mode));
  ev.walk = walk_base(k, delta, ev.xi);
  ev.guess = guess_base(ev.theta, delta);
  return ev;
}

}  // namespace

SystemSolution solve_system(int k, Real delta, Mode mode) {
  if (k < 2 || delta < 0 || delta > 1) fail(errc::infeasible_parameters, "need k >= 2, delta in [0,1]");

  SystemSolution out;
  if (mode == Mode::nae && k == 2) {
    // xi' and theta' are constants; the two success bounds never cross, so
    // the walk enjoys the better of the two.
    const Real w = walk_base(2, delta, 0.5L);
    const Real g = guess_base(2.0L, delta);
    out.base = std::min(w, g);
    out.eta_star = 2.0L;
    out.theta = 2.0L;
    out.xi = 0.5L;
    out.p_delta = p_delta_of(2, delta, 0.5L);
    out.crossing = false;
    return out;
  }

  const Real lo = (mode == Mode::nae ? 2.0L : 1.0L) + 1e-12L;
  const Real hi = static_cast<Real>(k);
  auto diff = [&](Real eta) {
    const CurveEval ev = eval_curves(k, delta, mode, eta);
    return ev.walk - ev.guess;
  };

  // The walk base must not increase and the guess base must not decrease in
  // eta; the bisection below relies on it.
  {
    Real prev_walk = 0, prev_guess = 0;
    for (int i = 0; i <= 32; ++i) {
      const Real eta = lo + (hi - lo) * static_cast<Real>(i) / 32.0L;
      const CurveEval ev = eval_curves(k, delta, mode, eta);
      if (i > 0 && (ev.walk > prev_walk + 1e-9L || ev.guess < prev_guess - 1e-9L))
        throw std::logic_error("walk/guess monotonicity violated; bisection invalid");
      prev_walk = ev.walk;
      prev_guess = ev.guess;
    }
  }

  auto finish = [&](Real eta, bool crossing) {
    const CurveEval ev = eval_curves(k, delta, mode, eta);
    out.base = crossing ? ev.walk : std::min(ev.walk, ev.guess);
    out.eta_star = eta;
    out.theta = ev.theta;
    out.xi = ev.xi;
    out.p_delta = p_delta_of(k, delta, ev.xi);
    out.crossing = crossing;
    return out;
  };

  if (diff(lo) <= 0) return finish(lo, false);  // guess dominates; walk curve peaks at lo
  if (diff(hi) >= 0) return finish(hi, false);  // walk dominates; guess curve peaks at hi

  Real a = lo, b = hi;
  while (b - a > 1e-9L) {
    const Real mid = a + (b - a) / 2.0L;
    if (diff(mid) > 0)
      a = mid;
    else
      b = mid;
  }
  return finish(a + (b - a) / 2.0L, true);
}

Real reduce_solve_base(int k, Real delta, Real c, Mode mode, std::optional<Rational> eta) {
  if (c <= 1) fail(errc::infeasible_parameters, "exact-engine base must exceed 1");
  if (delta < 0 || delta > 1) fail(errc::infeasible_parameters, "delta in [0,1]");
  Real xi_value = 0.5L;  // worst case: eta = 2 (nae) / eta = 1 (sat)
  if (eta) xi_value = to_long_double(xi(k, *eta, mode));
  const Real inner = 1.0L - 2.0L * (1.0L - delta) * xi_value;
  if (inner <= 0) return 1.0L;  // every variable eliminated; exact phase vanishes
  return std::pow(c, std::pow(inner, 1.0L / static_cast<Real>(k)));
}

Real exact_engine_base(int k, Mode mode, Real omega) {
  const bool matrix_product_applies = (mode == Mode::nae && k <= 3) || (mode == Mode::sat && k <= 2);
  return matrix_product_applies ? std::pow(2.0L, omega / 3.0L) : 2.0L;
}

std::vector<Fig1Row> fig1_table() {
  static const Real moser[4] = {1.33334L, 1.50001L, 1.60001L, 1.66667L};
  static const Real dantsin[4] = {1.50001L, 1.60001L, 1.66667L, 1.71429L};
  static const Real ppsz[4] = {1.30704L, 1.46899L, 1.56943L, 1.63788L};
  std::vector<Fig1Row> rows;
  for (int k = 3; k <= 6; ++k) {
    Fig1Row row;
    row.k = k;
    row.this_work = round_up(nae_det_bound(k).base, 5);
    row.liu = round_up(liu_ck(k), 5);
    row.moser_scheder = moser[k - 3];
    row.dantsin = dantsin[k - 3];
    row.ppsz = ppsz[k - 3];
    rows.push_back(row);
  }
  return rows;
}

namespace {

std::string fixed(Real v, int decimals) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(decimals);
  os << static_cast<double>(v);
  return os.str();
}

}  // namespace

std::string fig1_csv() {
  std::ostringstream os;
  os << "k,this_work,liu2018,moser_scheder,dantsin,ppsz,provenance\n";
  for (const Fig1Row& r : fig1_table()) {
    os << r.k << ',' << fixed(r.this_work, 5) << ',' << fixed(r.liu, 5) << ','
       << fixed(r.moser_scheder, 5) << ',' << fixed(r.dantsin, 5) << ',' << fixed(r.ppsz, 5)
       << ",computed;computed;cited;cited;cited\n";
  }
  return os.str();
}

std::vector<CurvePoint> curves(int k, Mode mode, int grid_points, Real omega) {
  if (grid_points < 2) fail(errc::infeasible_parameters, "grid needs at least 2 points");
  const Real c = exact_engine_base(k, mode, omega);
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    CurvePoint p;
    p.delta = static_cast<Real>(i) / static_cast<Real>(grid_points - 1);
    p.system_base = solve_system(k, p.delta, mode).base;
    p.reduce_base = reduce_solve_base(k, p.delta, c, mode);
    p.hirsch = hirsch_base(k, p.delta);
    p.dominated = p.system_base <= p.hirsch + 1e-12L;
    out.push_back(p);
  }
  return out;
}

std::string curves_csv(int k, Mode mode, int grid_points, Real omega) {
  std::ostringstream os;
  os << "delta,system_base,reduce_solve_base,hirsch_base,system_le_hirsch,provenance\n";
  for (const CurvePoint& p : curves(k, mode, grid_points, omega)) {
    os << fixed(p.delta, 6) << ',' << fixed(p.system_base, 6) << ',' << fixed(p.reduce_base, 6)
       << ',' << fixed(p.hirsch, 6) << ',' << (p.dominated ? "true" : "false") << ",computed\n";
  }
  return os.str();
}

Real round_up(Real x, int decimals) {
  Real scale = 1.0L;
  for (int i = 0; i < decimals; ++i) scale *= 10.0L;
  return std::ceil(x * scale - 1e-9L) / scale;
}

BoundReport report(int k, std::optional<Real> delta, Mode mode) {
  BoundReport rep;
  rep.k = k;
  rep.delta = delta;
  rep.mode = mode;
  auto put = [&rep](const std::string& name, Real v, const char* prov = "computed") {
    rep.quantities[name] = v;
    rep.provenance[name] = prov;
  };
  if (k >= 3 && k <= 16) {
    put("c_k", liu_ck(k));
    const DetBound det = nae_det_bound(k);
    put("nu", det.nu);
    put("c_k_prime", det.base);
    put("lambda", to_long_double(lp_closed_form(k).lambda));
  }
  put("omega", default_omega, "cited");
  if (delta) {
    put("hirsch", hirsch_base(k, *delta));
    const SystemSolution sys = solve_system(k, *delta, mode);
    put(mode == Mode::nae ? "gamma_prime" : "gamma", sys.base);
    put("eta_star", sys.eta_star);
    put(mode == Mode::nae ? "theta_prime" : "theta", sys.theta);
    put(mode == Mode::nae ? "xi_prime" : "xi", sys.xi);
    put("p_delta", sys.p_delta);
    put("reduce_solve", reduce_solve_base(k, *delta, exact_engine_base(k, mode), mode));
    put("exact_engine", exact_engine_base(k, mode));
  }
  return rep;
}

}  // namespace naesat::bounds
