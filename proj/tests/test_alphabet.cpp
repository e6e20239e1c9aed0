#include <doctest.h>

#include <cmath>
#include <set>

#include "cfdim/alphabet.hpp"
#include "cfdim/errors.hpp"

using namespace cfdim;

namespace {

std::vector<Digit> iota(Digit lo, Digit hi) {
  std::vector<Digit> v;
  for (Digit n = lo; n <= hi; ++n) v.push_back(n);
  return v;
}

}  // namespace

TEST_CASE("parse leq and geq") {
  const Alphabet a = parse_alphabet("leq:5");
  CHECK(a.is_finite());
  CHECK(first_elements(a, 100) == iota(1, 5));
  CHECK(a.convergence_abscissa() == -INFINITY);

  const Alphabet b = parse_alphabet("geq:7");
  CHECK_FALSE(b.is_finite());
  CHECK(first_elements(b, 5) == iota(7, 11));
  CHECK(b.convergence_abscissa() == doctest::Approx(0.5));
}

TEST_CASE("parse fib carries Binet parameters") {
  const Alphabet a = parse_alphabet("fib:geq:10");
  REQUIRE(a.components().size() == 1);
  const auto& q = std::get<QuasiGeometric>(a.components()[0]);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(q.a() == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(q.lambda() == doctest::Approx(phi).epsilon(1e-15));
  CHECK(q.b() == -1.0);
  CHECK(q.rho() == doctest::Approx(-1 / (phi * phi)).epsilon(1e-15));
  CHECK(q.from == 10);
  CHECK(first_elements(a, 3) == std::vector<Digit>{55, 89, 144});
  CHECK(a.convergence_abscissa() == 0.0);
}

TEST_CASE("fibonacci elements follow the integer recurrence and Binet rounding") {
  const auto v = first_elements(parse_alphabet("fib:geq:2"), 80);
  REQUIRE(v.size() == 80);
  CHECK(v[0] == 1);
  CHECK(v[1] == 2);
  for (std::size_t i = 2; i < v.size(); ++i) CHECK(v[i] == v[i - 1] + v[i - 2]);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  for (std::size_t i = 0; i < 60; ++i) {
    const double binet = std::pow(phi, double(i + 2)) / std::sqrt(5.0);
    CHECK(static_cast<Digit>(std::llround(binet)) == v[i]);
  }
}

TEST_CASE("bounded fib, poly and geom forms") {
  CHECK(first_elements(parse_alphabet("fib:leq:8:from:5"), 10) == std::vector<Digit>{5, 8, 13, 21});
  CHECK(first_elements(parse_alphabet("poly:1,0,0:geq:3"), 4) == std::vector<Digit>{9, 16, 25, 36});
  CHECK(first_elements(parse_alphabet("poly:2,1:leq:4:from:2"), 10) == std::vector<Digit>{5, 7, 9});
  CHECK(first_elements(parse_alphabet("geom:3,2:geq:1"), 4) == std::vector<Digit>{6, 12, 24, 48});
  CHECK(parse_alphabet("poly:1,0,0:geq:3").convergence_abscissa() == doctest::Approx(0.25));
}

TEST_CASE("unions enumerate the disjoint union") {
  const Alphabet a = parse_alphabet("set:1,3|geq:10");
  CHECK(first_elements(a, 4) == std::vector<Digit>{1, 3, 10, 11});
  CHECK(parse_alphabet("leq:3|set:5").is_finite());
  CHECK_THROWS_AS(parse_alphabet("leq:5|set:5"), ParseError);
  CHECK_THROWS_AS(parse_alphabet("geq:5|fib:geq:6"), ParseError);  // 8 twice
}

TEST_CASE("parse errors") {
  for (const char* bad : {"", "leq:", "leq:0", "geq:x", "set:1,1", "set:0", "poly:-1,5:geq:1",
                          "poly:1,-10,0:geq:1", "fib:geq:1", "geom:1,1:geq:1", "wat:3", "leq:3|"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_alphabet(bad), ParseError);
  }
}

TEST_CASE("empty alphabet") {
  CHECK(parse_alphabet("empty").is_empty());
  CHECK(parse_alphabet("set:").is_empty());
  CHECK_FALSE(parse_alphabet("set:4").is_empty());
}

TEST_CASE("enumerate finite sets lists everything") {
  const Enumeration e = enumerate(parse_alphabet("set:1,2"), 0.5, 1.0);
  CHECK(e.explicit_elements == std::vector<Digit>{1, 2});
  CHECK(e.tails.empty());
}

TEST_CASE("enumerate geq:7 leaves a polynomial tail") {
  const Enumeration e = enumerate(parse_alphabet("geq:7"), 1e-30, 1.0);
  REQUIRE(e.tails.size() == 1);
  const TailDescriptor& t = e.tails[0];
  CHECK(t.decay == TailDescriptor::Decay::polynomial);
  CHECK(t.degree == 1);
  CHECK(t.leading == 1.0);
  REQUIRE(!e.explicit_elements.empty());
  CHECK(e.explicit_elements.front() == 7);
  bool consecutive = true;
  for (std::size_t i = 1; i < e.explicit_elements.size(); ++i)
    consecutive = consecutive && e.explicit_elements[i] == e.explicit_elements[i - 1] + 1;
  CHECK(consecutive);
  CHECK(t.value_at(t.start_index) == doctest::Approx(double(e.explicit_elements.back() + 1)));
}

TEST_CASE("enumerate fib:geq:10 stops at the weight cutoff") {
  const double s = 0.3;
  for (double tol : {1e-8, 1e-20}) {
    CAPTURE(tol);
    const Enumeration e = enumerate(parse_alphabet("fib:geq:10"), tol, s);
    REQUIRE(e.tails.size() == 1);
    const TailDescriptor& t = e.tails[0];
    CHECK(t.decay == TailDescriptor::Decay::geometric);
    CHECK(t.ratio == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    REQUIRE(!e.explicit_elements.empty());
    CHECK(e.explicit_elements.front() == 55);
    for (Digit n : e.explicit_elements) CHECK(std::pow(double(n), -2 * s) >= tol);
    const double first_tail = t.value_at(t.start_index);
    if (tol == 1e-8) {
      CHECK(std::pow(first_tail, -2 * s) < tol);
    } else {
      // The cutoff lies beyond 64-bit integers; the tail takes over at the ceiling.
      CHECK(first_tail > 1e18);
    }
  }
}

TEST_CASE("enumerate below the abscissa is divergent") {
  CHECK_THROWS_AS(enumerate(parse_alphabet("geq:3"), 1e-10, 0.5), DivergentSumError);
  CHECK_THROWS_AS(enumerate(parse_alphabet("poly:1,0,0:geq:1"), 1e-10, 0.2), DivergentSumError);
}

TEST_CASE("property: enumerated elements are distinct and increasing") {
  for (const char* spec : {"leq:40", "geq:3", "fib:geq:4|set:1", "poly:1,1,1:geq:1|set:2", "geom:1,3:geq:0|set:2"}) {
    CAPTURE(spec);
    const auto v = first_elements(parse_alphabet(spec), 200);
    std::set<Digit> uniq(v.begin(), v.end());
    CHECK(uniq.size() == v.size());
    CHECK(std::is_sorted(v.begin(), v.end()));
    CHECK(v.front() >= 1);
  }
}
