#include <doctest.h>

#include "jonq/errors.hpp"
#include "jonq/parser.hpp"
#include "support.hpp"

using namespace jonq;
using namespace jonq::testing;

namespace {
UniPoly P(const char* s) { return parse_poly(s); }
JonquieresMap J(const char* fiber, std::optional<std::string> base = std::nullopt) {
  return parse_map(MapSource{fiber, std::move(base), "y"});
}
std::size_t error_position(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no parse error");
  return 0;
}
}  // namespace

TEST_CASE("polynomial grammar") {
  CHECK(P("y*(y+2)") == UniPoly{0, 2, 1});
  CHECK(P("1/2*y^2 - 3") == UniPoly{-3, 0, Scalar(Rational(1, 2))});
  CHECK(P("-y") == UniPoly{0, -1});
  CHECK(P("+3") == UniPoly{3});
  CHECK(P("(y+1)^0") == UniPoly{1});
  CHECK(P(" 2 / 4 ") == UniPoly{Scalar(Rational(1, 2))});
  CHECK(P("-(1-y)^3") == P("y^3-3*y^2+3*y-1"));
  CHECK(P("0*y") == UniPoly());
  CHECK(parse_poly("t^2+t", "t") == UniPoly{0, 1, 1});
  CHECK(P("123456789012345678901234567890") == UniPoly{Scalar(Rational(Integer("123456789012345678901234567890")))});
}

TEST_CASE("polynomial syntax errors carry positions") {
  CHECK(error_position([] { P("y^(2)"); }) == 2);
  CHECK(error_position([] { P("2y"); }) == 1);
  CHECK(error_position([] { P("y+x"); }) == 2);
  CHECK(error_position([] { P("y+"); }) == 2);
  CHECK(error_position([] { P("(y+1"); }) == 4);
  CHECK(error_position([] { P("1/0"); }) == 2);
  CHECK(error_position([] { P("y^-1"); }) == 2);
  CHECK(error_position([] { P(""); }) == 0);
  CHECK(error_position([] { P("y/2"); }) == 1);
  CHECK(error_position([] { P("y^100000"); }) == 2);
  CHECK_THROWS_AS(P(std::string(1000, '(').c_str()), ParseError);
  CHECK_THROWS_WITH(P("y+z"), doctest::Contains("unknown symbol 'z'"));
  CHECK_THROWS_AS(parse_poly("y", "2bad"), DomainError);
}

TEST_CASE("maps") {
  JonquieresMap f = J("[[y*(y+2), y^5],[1, y*(y+2)]]");
  CHECK(f.fiber().a() == P("y^2+2*y"));
  CHECK(f.fiber().b() == P("y^5"));
  CHECK(J("[[1,0],[0,1]]") == JonquieresMap::identity());
  CHECK(J("[[y,0],[0,y]]") == JonquieresMap::identity());
  CHECK_THROWS_WITH_AS(J("[[y,0],[y,0]]"), doctest::Contains("not birational along fibers"), DomainError);
  CHECK(J("[[ y/(y+1), 0 ],[ 0, 1 ]]") == J("[[y, 0],[0, y+1]]"));
  CHECK(J("[[1/2, 1/3],[0, 1]]") == J("[[3, 2],[0, 6]]"));
  CHECK(J("[[y,0],[0,1]]", "[[2,0],[0,1]]").base() == Moebius(2, 0, 0, 1));
  CHECK(J("[[y,0],[0,1]]", "[[1/2, -1],[0, 1/2]]").base() == Moebius(1, -2, 0, 1));
  CHECK_THROWS_AS(J("[[y,0],[0,1]]", "[[1,2],[2,4]]"), DomainError);
  CHECK_THROWS_AS(J("[[y,0],[0,1]]", "[[y,0],[0,1]]"), ParseError);
  CHECK(error_position([] { J("[[y,0],[0,1]"); }) == 12);
  CHECK(error_position([] { J("[[y,0,1],[0,1]]"); }) == 5);
  CHECK(error_position([] { J("[[y,0],[0,1]] x"); }) == 14);
  CHECK(error_position([] { J("[[y/0,0],[0,1]]"); }) == 4);
  MapSource t{"[[t, 0],[0, 1]]", std::nullopt, "t"};
  CHECK(parse_map(t) == J("[[y, 0],[0, 1]]"));
}

TEST_CASE("serialization") {
  CHECK(serialize(JonquieresMap::identity()).fiber_matrix_text == "[[1, 0],[0, 1]]");
  CHECK_FALSE(serialize(JonquieresMap::identity()).base_matrix_text);
  MapSource s = serialize(J("[[y*(y+2), y^5],[1, y*(y+2)]]"));
  CHECK(s.fiber_matrix_text == "[[y^2+2*y, y^5],[1, y^2+2*y]]");
  CHECK(serialize(family_ft(Rational(5, 2))).base_matrix_text == "[[1, 5/2],[0, 1]]");
  CHECK(serialize(J("[[y,0],[0,1]]"), "t").fiber_matrix_text == "[[t, 0],[0, 1]]");
  JonquieresMap irr(FiberMatrix(UniPoly{Scalar::quadratic(0, 1, 2)}, UniPoly(), UniPoly(), UniPoly{1}));
  CHECK_THROWS_WITH_AS(serialize(irr), doctest::Contains("not serializable"), DomainError);
}

TEST_CASE("round trip on random maps") {
  Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    JonquieresMap f = random_map(rng, 5);
    CHECK(parse_map(serialize(f)) == f);
    CHECK(serialize(parse_map(serialize(f))) == serialize(f));
  }
}

TEST_CASE("arbitrary bytes never escape as anything but parse errors") {
  Rng rng(42);
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    for (int n = uniform(rng, 0, 30); n > 0; --n) s += static_cast<char>(uniform(rng, 0, 255));
    if (uniform(rng, 0, 1)) s = "[[" + s;
    try {
      parse_map(MapSource{s, std::nullopt, "y"});
    } catch (const ParseError& e) {
      CHECK(e.position() <= s.size());
    } catch (const DomainError&) {
    }
  }
}
