#include <doctest.h>

#include <cmath>
#include <complex>

#include "apnf/timefn.hpp"
#include "oracles.hpp"

using namespace apnf::timefn;
using oracle::cplx;

namespace {
const Config kCfg{};

TimeFn exp_decay(double c, double rate) { return TimeFn(ExpPoly::decay(cplx{c, 0.0}, rate)); }

double resid_homological(const TimeFn& f, const TimeFn& c, double lambda, double t_hi,
                         int samples = 100) {
  const TimeFn dc = time_derivative(c);
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = t_hi * i / samples;
    const cplx r = dc.value(t) + cplx{0.0, lambda} * c.value(t) - f.value(t);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}
}  // namespace

TEST_CASE("ExpPoly products add exponents and preserve powers") {
  const TimeFn a = exp_decay(1.0, 1.0);
  const TimeFn p = multiply(a, a);
  const auto& e = std::get<ExpPoly>(p.rep());
  REQUIRE(e.terms().size() == 1);
  CHECK(e.terms()[0].mu.real() == doctest::Approx(-2.0));
  CHECK(e.terms()[0].power == 0);

  const TimeFn t_e = TimeFn(ExpPoly::mode(cplx{1.0, 0.0}, 1, cplx{-1.0, 0.0}));
  const TimeFn q = multiply(t_e, exp_decay(1.0, 2.0));
  const auto& eq = std::get<ExpPoly>(q.rep());
  REQUIRE(eq.terms().size() == 1);
  CHECK(eq.terms()[0].mu.real() == doctest::Approx(-3.0));
  CHECK(eq.terms()[0].power == 1);
}

TEST_CASE("RationalDecay products add orders") {
  const TimeFn a = TimeFn(RationalDecay::single(cplx{1.0, 0.0}, 2));
  const TimeFn b = TimeFn(RationalDecay::single(cplx{1.0, 0.0}, 1));
  const TimeFn p = multiply(a, b);
  const auto& r = std::get<RationalDecay>(p.rep());
  REQUIRE(r.terms().size() == 1);
  CHECK(r.terms()[0].order == 3);
  CHECK(p.value(3.0).real() == doctest::Approx(std::pow(4.0, -3)));
}

TEST_CASE("time derivatives of the exact classes") {
  const double a = 0.7;
  const TimeFn d1 = time_derivative(exp_decay(1.0, a));
  CHECK(d1.value(1.3).real() == doctest::Approx(-a * std::exp(-a * 1.3)));

  // t e^{-t} -> (1 - t) e^{-t}
  const TimeFn te = TimeFn(ExpPoly::mode(cplx{1.0, 0.0}, 1, cplx{-1.0, 0.0}));
  const TimeFn d2 = time_derivative(te);
  for (double t : {0.0, 0.5, 2.0}) {
    CHECK(d2.value(t).real() == doctest::Approx((1.0 - t) * std::exp(-t)));
  }

  // bump derivative vanishes off the support
  const TimeFn xi = TimeFn(PiecewisePoly::bump(3.0, 1.0, 0.5));
  const TimeFn dxi = time_derivative(xi);
  CHECK(dxi.value(3.6) == cplx{0.0, 0.0});
  CHECK(dxi.value(1.0) == cplx{0.0, 0.0});

  // the bump is C^1 but not C^2: differentiating twice must fail
  CHECK_THROWS_AS((void)time_derivative(dxi), std::invalid_argument);
}

TEST_CASE("oscillatory tail: elementary antiderivative at lambda = 0") {
  const double a = 0.4;
  const TimeFn c = oscillatory_tail(exp_decay(1.0, a), 0.0);
  for (double t : {0.0, 1.0, 7.5}) {
    CHECK(c.value(t).real() == doctest::Approx(-std::exp(-a * t) / a));
    CHECK(c.value(t).imag() == doctest::Approx(0.0));
  }
}

TEST_CASE("oscillatory tail: exp(-t/2) at lambda = 1 against the quadrature oracle") {
  const TimeFn f = exp_decay(1.0, 0.5);
  const TimeFn c = oscillatory_tail(f, 1.0);

  // closed form -e^{-t/2}/(1/2 - i)
  const cplx denom{0.5, -1.0};
  for (double t : {0.0, 1.0, 5.0}) {
    const cplx expected = -std::exp(-0.5 * t) / denom;
    CHECK(std::abs(c.value(t) - expected) < 1e-13);
    const cplx from_oracle =
        oracle::tail_integral([](double s) { return cplx{std::exp(-0.5 * s), 0.0}; }, 1.0, t,
                              t + 120.0);
    CHECK(std::abs(c.value(t) - from_oracle) < 1e-10);
  }
  CHECK(resid_homological(f, c, 1.0, 40.0) < 1e-12);
}

TEST_CASE("oscillatory tail of a bump vanishes after the support ends") {
  const TimeFn xi = TimeFn(PiecewisePoly::bump(4.0, 1.0, 0.5));
  for (double lambda : {0.0, 1.0, 2.7}) {
    const TimeFn c = oscillatory_tail(xi, lambda);
    CHECK(c.value(4.51) == cplx{0.0, 0.0});
    CHECK(c.value(9.0) == cplx{0.0, 0.0});
    CHECK(std::abs(c.value(2.0)) > 0.0);  // active before the support
    CHECK(resid_homological(xi, c, lambda, 6.0) < 1e-12);
  }
}

TEST_CASE("homological identity across the exact classes") {
  // 100 sampled t in [0, 20/rate], residual <= 1e-12 * max(1, sup|f|)
  const double rate = 0.3;
  const TimeFn f1 = TimeFn(ExpPoly({{cplx{0.4, -0.2}, 1, cplx{-rate, 0.5}},
                                   {cplx{-1.0, 0.0}, 0, cplx{-2.0 * rate, 0.0}}},
                                  kCfg));
  for (double lambda : {0.0, -1.3, 2.0}) {
    const TimeFn c = oscillatory_tail(f1, lambda);
    const double tol = 1e-12 * std::max(1.0, sup_abs(f1));
    CHECK(resid_homological(f1, c, lambda, 20.0 / rate) < tol);
  }

  const TimeFn f2 = TimeFn(RationalDecay({{cplx{1.0, 0.0}, 2}, {cplx{0.3, 0.1}, 3}}));
  const TimeFn c2 = oscillatory_tail(f2, 0.0);
  CHECK(resid_homological(f2, c2, 0.0, 40.0) < 1e-12 * std::max(1.0, sup_abs(f2)));
}

TEST_CASE("rational tails at nonzero frequency are quadrature-backed") {
  const TimeFn f = TimeFn(RationalDecay::single(cplx{1.0, 0.0}, 2));
  const double lambda = 1.0;
  const TimeFn c = oscillatory_tail(f, lambda);
  CHECK(c.cls() == TimeClass::quad);

  // values against the oracle
  for (double t : {0.0, 2.0, 11.0}) {
    const cplx expected = oracle::tail_integral(
        [](double s) { return cplx{std::pow(s + 1.0, -2), 0.0}; }, lambda, t, t + 4.0e4);
    CHECK(std::abs(c.value(t) - expected) < 3e-5);  // oracle truncation dominates
  }
  // the ODE identity holds to the class tolerance (1e-10 absolute, spectral
  // differentiation noise on top)
  CHECK(resid_homological(f, c, lambda, 40.0) < 1e-7);

  // loss of a power: certified (t+1)^{-1} majorant
  const RationalMajorant maj = certify_rational(c, 1);
  CHECK(maj.order == 1);
  CHECK(maj.amplitude < 10.0);
  for (double t : {0.0, 5.0, 40.0}) {
    CHECK(std::abs(c.value(t)) <= maj.amplitude * std::pow(t + 1.0, -1) * (1.0 + 1e-9));
  }
}

TEST_CASE("divergent tails are reported") {
  CHECK_THROWS_AS((void)oscillatory_tail(TimeFn(RationalDecay::single(cplx{1.0, 0.0}, 1)), 0.0),
                  TailDiverges);
  CHECK_THROWS_AS((void)oscillatory_tail(TimeFn::constant(cplx{1.0, 0.0}), 2.0), TailDiverges);
}

TEST_CASE("envelope certification") {
  // f = c t e^{-at} at target a' < a: M = |c| / (e (a - a'))
  const double a = 1.0, ap = 0.25, cmag = 3.0;
  const TimeFn f = TimeFn(ExpPoly::mode(cplx{cmag, 0.0}, 1, cplx{-a, 0.0}));
  const Envelope env = certify_envelope(f, ap);
  const double expected = cmag / (std::exp(1.0) * (a - ap));
  CHECK(env.amplitude == doctest::Approx(expected).epsilon(1e-9));
  const double scanned = oracle::envelope_sup([&f](double t) { return f.value(t); }, ap, 60.0);
  CHECK(env.amplitude >= scanned * (1.0 - 1e-9));
  CHECK(env.amplitude <= scanned * (1.0 + 1e-4));

  // f = e^{-at} certified at its own rate: M = 1
  CHECK(certify_envelope(exp_decay(1.0, a), a).amplitude == doctest::Approx(1.0));

  // bump peak
  const TimeFn xi = TimeFn(PiecewisePoly::bump(2.0, 1.0, 0.5));
  CHECK(certify_envelope(xi, 0.0).amplitude == doctest::Approx(1.0).epsilon(1e-10));

  // target rate above the certifiable decay
  CHECK_THROWS_AS((void)certify_envelope(exp_decay(1.0, a), 2.0 * a), std::invalid_argument);
  // t e^{-at} cannot be certified at exactly rate a
  CHECK_THROWS_AS((void)certify_envelope(f, a), std::invalid_argument);
}

TEST_CASE("tail envelope obeys the M/a shape for every frequency") {
  const double m_in = 2.0, a = 0.35;
  const TimeFn f = exp_decay(m_in, a);
  for (double lambda : {0.0, 0.1, 1.0, 17.0, -4.0}) {
    const TimeFn c = oscillatory_tail(f, lambda);
    const Envelope env = certify_envelope(c, a);
    CHECK(env.amplitude <= m_in / a * (1.0 + 1e-12));
    // and the exact value is M/|a - i lambda|
    CHECK(env.amplitude ==
          doctest::Approx(m_in / std::hypot(a, lambda)).epsilon(1e-10));
  }
}

TEST_CASE("closure of ExpPoly under the four operations") {
  const TimeFn f = TimeFn(ExpPoly({{cplx{1.0, 0.5}, 0, cplx{-0.5, 1.0}},
                                  {cplx{0.2, 0.0}, 2, cplx{-1.0, 0.0}}},
                                 kCfg));
  CHECK(multiply(f, f).cls() == TimeClass::exp_poly);
  CHECK(add(f, f).cls() == TimeClass::exp_poly);
  CHECK(time_derivative(f).cls() == TimeClass::exp_poly);
  CHECK(oscillatory_tail(f, 0.7).cls() == TimeClass::exp_poly);
}

TEST_CASE("term-cap overflow promotes to QuadFn and keeps values") {
  Config tight = kCfg;
  tight.term_cap = 3;
  const TimeFn f = TimeFn(ExpPoly({{cplx{1.0, 0.0}, 0, cplx{-1.0, 1.0}},
                                  {cplx{1.0, 0.0}, 0, cplx{-1.0, 2.0}}},
                                 tight));
  const TimeFn g = TimeFn(ExpPoly({{cplx{1.0, 0.0}, 0, cplx{-2.0, -1.0}},
                                  {cplx{1.0, 0.0}, 0, cplx{-2.0, 5.0}}},
                                 tight));
  const TimeFn p = multiply(f, g, tight);
  REQUIRE(p.cls() == TimeClass::quad);
  CHECK(std::get<QuadFn>(p.rep()).promoted_from_cap());
  for (double t : {0.0, 0.5, 3.0}) {
    CHECK(std::abs(p.value(t) - f.value(t) * g.value(t)) < 1e-9);
  }
}

TEST_CASE("mixed-class products degrade to QuadFn, constants do not") {
  const TimeFn r = TimeFn(RationalDecay::single(cplx{1.0, 0.0}, 2));
  const TimeFn e = exp_decay(1.0, 1.0);
  const TimeFn mixed = multiply(r, e);
  CHECK(mixed.cls() == TimeClass::quad);
  CHECK(std::abs(mixed.value(1.0) - r.value(1.0) * e.value(1.0)) < 1e-8);

  const TimeFn scaled = multiply(TimeFn::constant(cplx{2.0, 0.0}), r);
  CHECK(scaled.cls() == TimeClass::rational);
  CHECK(scaled.value(1.0).real() == doctest::Approx(0.5));
}

TEST_CASE("exponent merging tolerance") {
  const cplx mu1{-1.0, 0.0};
  const cplx mu2{-1.0 * (1.0 + 1e-14), 0.0};
  const TimeFn f = TimeFn(ExpPoly({{cplx{1.0, 0.0}, 0, mu1}, {cplx{1.0, 0.0}, 0, mu2}}, kCfg));
  CHECK(std::get<ExpPoly>(f.rep()).terms().size() == 1);
  CHECK(f.value(0.0).real() == doctest::Approx(2.0));
}

TEST_CASE("bump trains validate spacing") {
  CHECK_NOTHROW((void)PiecewisePoly::bump_train({{2.0, 1.0}, {5.0, -2.0}}, 1.0));
  CHECK_THROWS_AS((void)PiecewisePoly::bump_train({{2.0, 1.0}, {3.5, 1.0}}, 1.0),
                  std::invalid_argument);
}
