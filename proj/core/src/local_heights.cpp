#include "stochdyn/local_heights.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "stochdyn/errors.hpp"
#include "stochdyn/factor.hpp"

namespace stochdyn {

namespace {

double rounding_floor(double value, long steps) {
  return (1.0 + std::abs(value) + static_cast<double>(steps)) * kLogRelativeError;
}

long vp(const Int& p, const Int& n) { return n == 0 ? -1 : valuation(p, n); }

// num/den as a double without canonicalizing, safe for huge operands.
double ratio_double(const Int& num, const Int& den) {
  long en = 0, ed = 0;
  const double dn = mpz_get_d_2exp(&en, num.get_mpz_t());
  const double dd = mpz_get_d_2exp(&ed, den.get_mpz_t());
  return std::ldexp(dn / dd, static_cast<int>(en - ed));
}

void check_pair_bits(const Int& x, const Int& y, std::uint64_t bit_budget) {
  const std::uint64_t bits =
      mpz_sizeinbase(x.get_mpz_t(), 2) + mpz_sizeinbase(y.get_mpz_t(), 2);
  if (bits > bit_budget) {
    throw IterationCapError("lifted orbit exceeded the bit budget");
  }
}

// Running state of the renormalized Green series at one place.
struct GreenSeries {
  const Place* v;
  const GeneratingSystem* sys;
  double c_v;
  std::uint64_t bit_budget;

  double ux = 0, uy = 0; // archimedean unit-norm pair
  Int ix, iy;            // p-adic normalized integer pair
  double logp = 0;

  double base = 0;   // log||(x,y)||_v
  double series = 0; // sum over completed steps
  Int deg{1};
  long steps = 0;

  GreenSeries(const Place& place, const GeneratingSystem& system, const Int& x,
              const Int& y, std::uint64_t budget)
      : v(&place), sys(&system), bit_budget(budget) {
    if (x == 0 && y == 0) {
      throw ZeroPointError("green undefined at (0,0)");
    }
    c_v = place_control_constant(place, system);
    if (place.archimedean) {
      Int ax = abs(x), ay = abs(y);
      const Int& m = ax > ay ? ax : ay;
      base = log_bigint(m);
      ux = ratio_double(x, m);
      uy = ratio_double(y, m);
    } else {
      logp = log_bigint(place.p);
      const long ex = vp(place.p, x);
      const long ey = vp(place.p, y);
      const long e0 = ex < 0 ? ey : (ey < 0 ? ex : std::min(ex, ey));
      base = -static_cast<double>(e0) * logp;
      Int scale = pow_int(place.p, e0);
      ix = x / scale;
      iy = y / scale;
    }
  }

  double tail() const { return c_v / (deg.get_d() * (sys->min_degree() - 1)); }

  void step(const RationalMapLift& phi) {
    deg *= phi.degree();
    ++steps;
    if (v->archimedean) {
      const double fx = phi.numerator().eval_double(ux, uy);
      const double fy = phi.denominator().eval_double(ux, uy);
      const double m = std::max(std::abs(fx), std::abs(fy));
      series += std::log(m) / deg.get_d();
      ux = fx / m;
      uy = fy / m;
    } else {
      auto [fx, fy] = phi.apply_raw(ix, iy);
      const long ex = vp(v->p, fx);
      const long ey = vp(v->p, fy);
      const long e = ex < 0 ? ey : (ey < 0 ? ex : std::min(ex, ey));
      if (e > 0) {
        Int scale = pow_int(v->p, e);
        fx /= scale;
        fy /= scale;
      }
      series += -static_cast<double>(e) * logp / deg.get_d();
      ix = std::move(fx);
      iy = std::move(fy);
      check_pair_bits(ix, iy, bit_budget);
    }
  }

  GreenValue finish() const {
    const double value = base + series;
    // c_v = 0 (good primes) certifies the series is identically zero;
    // a nonzero base still carries the log-rounding floor.
    double err;
    if (c_v == 0) {
      err = value == 0 ? 0.0 : rounding_floor(value, steps);
    } else {
      err = tail() + rounding_floor(value, steps);
    }
    return GreenValue{value, err};
  }
};

double log_E_at(const Place& v, const BinaryForm& E, const Int& x, const Int& y) {
  Int value = E.eval(x, y);
  if (value == 0) {
    throw OnDivisorError("point lies on the divisor");
  }
  if (v.archimedean) {
    return log_abs(value);
  }
  return -static_cast<double>(valuation(v.p, value)) * log_bigint(v.p);
}

} // namespace

DivisorForm DivisorForm::make(BinaryForm form) {
  if (form.coeffs.empty() || form.is_zero()) {
    throw InvalidSystemError("divisor form must not vanish identically");
  }
  if (form.degree() < 1) {
    throw InvalidSystemError("divisor form needs degree >= 1");
  }
  return DivisorForm{std::move(form)};
}

double place_control_constant(const Place& v, const RationalMapLift& phi) {
  if (v.archimedean) {
    const double log_res = log_abs(phi.resultant());
    const double upper = phi.height_control().c_upper;
    const double lower = phi.height_control().c_lower - log_res;
    return std::max({upper, lower, 0.0});
  }
  const long e = valuation(v.p, phi.resultant());
  return static_cast<double>(e) * log_bigint(v.p);
}

double place_control_constant(const Place& v, const GeneratingSystem& sys) {
  double c = 0;
  for (const RationalMapLift& phi : sys.maps()) {
    c = std::max(c, place_control_constant(v, phi));
  }
  return c;
}

GreenValue green(const Place& v, const GeneratingSystem& sys, PathSource& path,
                 const Int& x, const Int& y, double eps,
                 std::uint64_t bit_budget) {
  if (!(eps > 0)) {
    throw InvalidSystemError("green needs eps > 0");
  }
  GreenSeries series(v, sys, x, y, bit_budget);
  while (series.tail() > eps) {
    series.step(path.next());
  }
  return series.finish();
}

GreenValue green(const Place& v, const GeneratingSystem& sys,
                 const WordSpec& word, const Int& x, const Int& y, double eps,
                 std::uint64_t bit_budget) {
  auto path = word.make(sys);
  return green(v, sys, *path, x, y, eps, bit_budget);
}

GreenValue green_at_depth(const Place& v, const GeneratingSystem& sys,
                          const Word& word, const Int& x, const Int& y,
                          std::uint64_t bit_budget) {
  GreenSeries series(v, sys, x, y, bit_budget);
  for (int idx : word) {
    series.step(sys.map(idx));
  }
  return series.finish();
}

GreenValue local_canonical_height(const Place& v, const GeneratingSystem& sys,
                                  const WordSpec& word, const DivisorForm& E,
                                  const ProjectivePoint& P, double eps,
                                  std::uint64_t bit_budget) {
  const int e = E.degree();
  const double log_E = log_E_at(v, E.E, P.x, P.y);
  GreenValue g = green(v, sys, word, P.x, P.y, eps / e, bit_budget);
  GreenValue out;
  out.value = e * g.value - log_E;
  out.error = e * g.error + rounding_floor(out.value, 0);
  return out;
}

Decomposition decompose(const GeneratingSystem& sys, const WordSpec& word,
                        const DivisorForm& E, const ProjectivePoint& P,
                        double eps, std::uint64_t bit_budget) {
  Int e_value = E.E.eval(P.x, P.y);
  if (e_value == 0) {
    throw OnDivisorError("point lies on the divisor");
  }
  std::vector<Place> places;
  places.push_back(Place::arch());
  std::set<Int> primes = bad_primes(sys.maps());
  for (const Int& p : prime_support(e_value)) {
    primes.insert(p);
  }
  for (const Int& p : primes) {
    places.push_back(Place::prime(p));
  }

  Decomposition out;
  double total = 0;
  double total_error = 0;
  for (const Place& v : places) {
    GreenValue lambda = local_canonical_height(v, sys, word, E, P, eps,
                                               bit_budget);
    total += lambda.value;
    total_error += lambda.error;
    out.contributions.emplace_back(v, lambda);
  }
  const int e = E.degree();
  out.sum = total / e;
  out.sum_error = total_error / e;
  out.canonical = canonical_height(sys, word, P, eps, bit_budget);
  out.residual = std::abs(out.sum - out.canonical.value);
  out.combined_error = out.sum_error + out.canonical.error +
                       rounding_floor(out.sum, 0);
  return out;
}

GreenValue expected_local_height_exact(const Place& v,
                                       const GeneratingSystem& sys,
                                       const DivisorForm& E,
                                       const ProjectivePoint& P, int depth,
                                       std::uint64_t enum_budget,
                                       std::uint64_t bit_budget) {
  const int e = E.degree();
  const double log_E = log_E_at(v, E.E, P.x, P.y);
  double value = 0;
  double error = 0;
  for (const auto& [word, weight] : enumerate_prefixes(sys, depth, enum_budget)) {
    GreenValue g = green_at_depth(v, sys, word, P.x, P.y, bit_budget);
    const double w = weight.get_d();
    value += w * (e * g.value - log_E);
    error += w * e * g.error;
  }
  return GreenValue{value, error + rounding_floor(value, depth)};
}

namespace {

// Letters of the sampled word until the slowest place tail clears eps.
Word shared_probe_word(const GeneratingSystem& sys, double c_max, double eps,
                       std::uint64_t seed, std::uint64_t stream) {
  RngStream rng(seed, stream);
  Word word;
  Int deg(1);
  while (c_max / (deg.get_d() * (sys.min_degree() - 1)) > eps) {
    const int idx = sample_index(sys, rng);
    word.push_back(idx);
    deg *= sys.map(idx).degree();
  }
  return word;
}

} // namespace

GreenValue expected_local_height_mc(const Place& v, const GeneratingSystem& sys,
                                    const DivisorForm& E,
                                    const ProjectivePoint& P,
                                    const McOptions& opts) {
  if (opts.samples < 1) {
    throw InvalidSystemError("expected_local_height_mc needs samples >= 1");
  }
  const int e = E.degree();
  const double log_E = log_E_at(v, E.E, P.x, P.y);
  const double c_v = place_control_constant(v, sys);
  std::vector<double> values(static_cast<std::size_t>(opts.samples));
  for (std::int64_t i = 0; i < opts.samples; ++i) {
    SampledPath path(sys, RngStream(opts.seed, static_cast<std::uint64_t>(i)));
    GreenValue g = green(v, sys, path, P.x, P.y, opts.eps_inner / e,
                         opts.bit_budget);
    values[static_cast<std::size_t>(i)] = e * g.value - log_E;
  }
  double mean = 0;
  for (double x : values) mean += x;
  mean /= static_cast<double>(opts.samples);
  // lambda-hat ranges over an interval of width 2*e*c_v/(alpha-1) as the
  // word varies (the divisor term is word-independent).
  const double range = 2.0 * e * c_v / (sys.min_degree() - 1);
  const double half = range * std::sqrt(std::log(2.0 / opts.delta_conf) /
                                        (2.0 * static_cast<double>(opts.samples)));
  return GreenValue{mean, half + opts.eps_inner + rounding_floor(mean, 0)};
}

DependenceProbe dependence_probe(const GeneratingSystem& sys, const Place& v1,
                                 const Place& v2, const DivisorForm& E,
                                 const ProjectivePoint& P, std::int64_t samples,
                                 std::uint64_t seed, double eps_inner,
                                 std::uint64_t bit_budget) {
  if (v1 == v2) {
    throw InvalidSystemError("dependence_probe needs two distinct places");
  }
  if (samples < 2) {
    throw InvalidSystemError("dependence_probe needs samples >= 2");
  }
  const int e = E.degree();
  const double log_E1 = log_E_at(v1, E.E, P.x, P.y);
  const double log_E2 = log_E_at(v2, E.E, P.x, P.y);
  const double c_max = std::max(place_control_constant(v1, sys),
                                place_control_constant(v2, sys));

  std::vector<double> a(static_cast<std::size_t>(samples));
  std::vector<double> b(static_cast<std::size_t>(samples));
  for (std::int64_t i = 0; i < samples; ++i) {
    // Both marginals see the same word.
    Word word = shared_probe_word(sys, c_max, eps_inner / e, seed,
                                  static_cast<std::uint64_t>(i));
    FixedPath p1(sys, word), p2(sys, word);
    GreenValue g1 = green(v1, sys, p1, P.x, P.y, eps_inner / e, bit_budget);
    GreenValue g2 = green(v2, sys, p2, P.x, P.y, eps_inner / e, bit_budget);
    a[static_cast<std::size_t>(i)] = e * g1.value - log_E1;
    b[static_cast<std::size_t>(i)] = e * g2.value - log_E2;
  }

  double mean_a = 0, mean_b = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    mean_a += a[static_cast<std::size_t>(i)];
    mean_b += b[static_cast<std::size_t>(i)];
  }
  mean_a /= static_cast<double>(samples);
  mean_b /= static_cast<double>(samples);
  double var_a = 0, var_b = 0, cov = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    const double da = a[static_cast<std::size_t>(i)] - mean_a;
    const double db = b[static_cast<std::size_t>(i)] - mean_b;
    var_a += da * da;
    var_b += db * db;
    cov += da * db;
  }
  var_a /= static_cast<double>(samples - 1);
  var_b /= static_cast<double>(samples - 1);
  cov /= static_cast<double>(samples - 1);

  DependenceProbe out;
  out.samples = samples;
  out.variance_v1 = var_a;
  out.variance_v2 = var_b;
  if (var_a < 10 * eps_inner || var_b < 10 * eps_inner) {
    out.degenerate = true;
    return out;
  }
  out.correlation = cov / std::sqrt(var_a * var_b);
  return out;
}

} // namespace stochdyn
