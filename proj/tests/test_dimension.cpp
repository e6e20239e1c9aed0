#include <doctest.h>

#include <cmath>

#include "cfdim/dimension.hpp"
#include "cfdim/errors.hpp"
#include "oracles/oracle_values.hpp"

using namespace cfdim;

TEST_CASE("trivial alphabets") {
  CHECK(bowen_dimension(parse_alphabet("set:1")).delta == 0.0);
  CHECK(bowen_dimension(parse_alphabet("geq:1")).delta == doctest::Approx(1.0).epsilon(1e-14));
  const auto e = bowen_dimension(parse_alphabet("empty"));
  CHECK(e.empty);
  CHECK(e.delta == -INFINITY);
}

TEST_CASE("dimensions against the independent oracle") {
  struct Case {
    const char* spec;
    double value;
  };
  for (const Case c : {Case{"leq:2", oracle::kLeq2}, Case{"leq:20", oracle::kLeq20},
                       Case{"leq:160", oracle::kLeq160}, Case{"set:1,2,3", oracle::kSet123},
                       Case{"set:5,6", oracle::kSet56}, Case{"set:1,100", oracle::kSet1_100},
                       Case{"geq:20", oracle::kGeq20}, Case{"geq:100", oracle::kGeq100},
                       Case{"fib:geq:20", oracle::kFibGeq20}}) {
    CAPTURE(c.spec);
    const auto r = bowen_dimension(parse_alphabet(c.spec));
    CHECK(r.delta == doctest::Approx(c.value).epsilon(2e-13));
    CHECK(r.error_estimate < 1e-12);
    CHECK(r.pressure_residual < 1e-12);
  }
}

TEST_CASE("E2 to sixteen digits") {
  CHECK(std::abs(bowen_dimension(parse_alphabet("leq:2")).delta - 0.5312805062772051) < 1e-15);
}

TEST_CASE("classical bounds") {
  for (long long N : {8, 20, 160, 1280}) {
    CAPTURE(N);
    CHECK(jarnik_bounds(N).contains(bowen_dimension(parse_alphabet("leq:" + std::to_string(N))).delta));
  }
  CHECK(kurzweil_bounds(1280).contains(bowen_dimension(parse_alphabet("leq:1280")).delta));
  for (long long N : {20, 100, 1000}) {
    CAPTURE(N);
    CHECK(good_bounds(N).contains(bowen_dimension(parse_alphabet("geq:" + std::to_string(N))).delta));
  }
  CHECK_THROWS_AS(jarnik_bounds(7), DomainError);
  CHECK_THROWS_AS(kurzweil_bounds(999), DomainError);
  CHECK_THROWS_AS(good_bounds(19), DomainError);
}

TEST_CASE("property: monotone in the alphabet") {
  double prev = 0.0;
  for (int N : {2, 3, 5, 10, 40}) {
    const double d = bowen_dimension(parse_alphabet("leq:" + std::to_string(N))).delta;
    CHECK(d > prev);
    prev = d;
  }
  prev = 1.0;
  for (int N : {2, 5, 30, 200}) {
    const double d = bowen_dimension(parse_alphabet("geq:" + std::to_string(N))).delta;
    CHECK(d < prev);
    CHECK(d > 0.5);
    prev = d;
  }
  // Adding a digit raises the dimension.
  CHECK(bowen_dimension(parse_alphabet("set:1,2,3")).delta > bowen_dimension(parse_alphabet("set:1,2")).delta);
}

TEST_CASE("hurwitz tail") {
  const TailSum a = hurwitz_tail(0.6, 50, 0.37);
  CHECK(a.value == doctest::Approx(oracle::kHurwitzTail_s06_N50_x037).epsilon(1e-15));
  CHECK(a.remainder_bound <= 1e-17 * a.value);
  const TailSum b = hurwitz_tail(1.0, 1, 0.0);
  CHECK(b.value == doctest::Approx(oracle::kHurwitzTail_s1_N1_x0).epsilon(1e-15));
  CHECK_THROWS_AS(hurwitz_tail(0.5, 10, 0.0), DivergentSumError);
  CHECK_THROWS_AS(hurwitz_tail(0.7, 10, 0.0, 3), DomainError);
}

TEST_CASE("tolerance handling") {
  DimensionOptions opt;
  opt.tol = 1e-30;
  opt.m_max = 32;
  CHECK_THROWS_AS(bowen_dimension(parse_alphabet("leq:3"), opt), NumericalError);
  opt.require_tol = false;
  const auto r = bowen_dimension(parse_alphabet("leq:3"), opt);
  CHECK(r.grid_size == 32);
  CHECK(r.error_estimate < 1e-12);
  CHECK(bowen_dimension(parse_alphabet("leq:3"), 1e-8).delta ==
        doctest::Approx(bowen_dimension(parse_alphabet("leq:3")).delta).epsilon(1e-8));
}
