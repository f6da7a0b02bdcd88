#include "doctest.h"

#include "cyclescope/errors.hpp"
#include "cyclescope/spec_io.hpp"

using namespace cyclescope;

TEST_CASE("parse_spec_json examples") {
  const PerturbationSpec s = parse_spec_json(R"({"n": 3, "a": [[1, 0, 1.5], [1, 2, -1]], "b": [[0, 1, 2]]})");
  CHECK(s.n() == 3);
  CHECK(s.f().coeff(1, 0) == 1.5);
  CHECK(s.f().coeff(1, 2) == -1.0);
  CHECK(s.g().coeff(0, 1) == 2.0);
  CHECK(s.g().size() == 1);

  const PerturbationSpec rep = parse_spec_json(R"({"n": 1, "a": [[1, 0, 1], [1, 0, 2]], "b": []})");
  CHECK(rep.f().coeff(1, 0) == 3.0);
}

TEST_CASE("parse_spec_json errors") {
  CHECK_THROWS_AS(parse_spec_json("not json"), ParseError);
  CHECK_THROWS_AS(parse_spec_json(R"({"a": [], "b": []})"), ParseError);
  CHECK_THROWS_AS(parse_spec_json(R"({"n": 2, "a": [[1, 0]], "b": []})"), ParseError);
  CHECK_THROWS_AS(parse_spec_json(R"({"n": 2, "a": [[-1, 0, 1]], "b": []})"), ParseError);
  CHECK_THROWS_AS(parse_spec_json(R"({"n": 1, "a": [[2, 0, 1]], "b": []})"), DomainError);
  CHECK_THROWS_AS(load_spec("/nonexistent/spec.json"), ParseError);
}

TEST_CASE("spec JSON round trip") {
  const PerturbationSpec s = random_spec(4, 12);
  const PerturbationSpec back = parse_spec_json(spec_to_json(s));
  CHECK(back.n() == s.n());
  CHECK(back.f() == s.f());
  CHECK(back.g() == s.g());
}
