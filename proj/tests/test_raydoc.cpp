#include <doctest.h>

#include "kslat/raydoc.hpp"

using namespace kslat;

TEST_CASE("exact scalar literals") {
  CHECK(parse_exact_scalar("3") == Surd(3));
  CHECK(parse_exact_scalar("-5/8") == Surd(Rational(-5, 8)));
  CHECK(parse_exact_scalar("sqrt(2)") == Surd::sqrt_of(2));
  CHECK(parse_exact_scalar("-sqrt(2)") == -Surd::sqrt_of(2));
  CHECK(parse_exact_scalar("2*sqrt(3)") == Surd(Rational(0), Rational(2), 3));
  CHECK(parse_exact_scalar("1+sqrt(2)") == Surd(Rational(1), Rational(1), 2));
  CHECK(parse_exact_scalar("1-2*sqrt(2)") ==
        Surd(Rational(1), Rational(-2), 2));
  CHECK(parse_exact_scalar("1/2+3/2*sqrt(5)") ==
        Surd(Rational(1, 2), Rational(3, 2), 5));
  CHECK_THROWS_AS(parse_exact_scalar("sqrt(-2)"), ParseError);
  CHECK_THROWS_AS(parse_exact_scalar("sqrt(1)"), ParseError);
  CHECK_THROWS_AS(parse_exact_scalar("abc"), ParseError);
}

TEST_CASE("document parsing with headers and comments") {
  std::string text =
      "# comment\n"
      "dim 2\n"
      "mode exact\n"
      "rays 2\n"
      "1 0   # trailing comment\n"
      "0 sqrt(2)\n";
  RayConfiguration cfg = load_ray_string(text);
  CHECK(cfg.dim == 2);
  CHECK(cfg.mode == Mode::Exact);
  CHECK(cfg.size() == 2);
  CHECK(cfg.orthogonal(0, 1));
  CHECK(cfg.hash != 0);
}

TEST_CASE("header and body validation") {
  CHECK_THROWS_AS(load_ray_string("mode exact\nrays 0\n"), ParseError);
  CHECK_THROWS_AS(load_ray_string("dim 2\nrays 0\n"), ParseError);
  CHECK_THROWS_AS(load_ray_string("dim 2\nmode exact\nrays 2\n1 0\n"),
                  ParseError);
  CHECK_THROWS_AS(
      load_ray_string("dim 2\nmode exact\nrays 1\n1 0 0\n"),
      DimensionMismatch);
  // duplicate rays are an error unless dedupe is requested
  std::string dup = "dim 2\nmode exact\nrays 2\n1 0\n2 0\n";
  CHECK_THROWS_AS(load_ray_string(dup), ParseError);
  RayDocumentOptions opts;
  opts.dedupe = true;
  CHECK(load_ray_string(dup, opts).size() == 1);
}

TEST_CASE("float mode documents") {
  std::string text = "dim 2\nmode float\nrays 2\n0.6 0.8\n-0.8 0.6\n";
  RayConfiguration cfg = load_ray_string(text);
  CHECK(cfg.mode == Mode::Float);
  CHECK(cfg.orthogonal(0, 1));
  CHECK_THROWS_AS(load_ray_string("dim 2\nmode float\nrays 1\n0.5 x\n"),
                  ParseError);
}

TEST_CASE("canonical serialization fixes the hash") {
  std::string text = "dim 2\nmode exact\nrays 2\n2 0\n0 3\n";
  RayConfiguration cfg = load_ray_string(text);
  // reloading the canonical form reproduces the identical hash
  RayConfiguration again = load_ray_string(canonical_document(cfg));
  CHECK(again.hash == cfg.hash);
  // a different configuration hashes differently
  RayConfiguration other =
      load_ray_string("dim 2\nmode exact\nrays 2\n1 1\n1 -1\n");
  CHECK(other.hash != cfg.hash);
}

TEST_CASE("fnv hash reference values") {
  // reference values of the 64-bit FNV-1a test vectors
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}
