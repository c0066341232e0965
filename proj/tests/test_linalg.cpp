#include <doctest.h>

#include <cmath>

#include "kslat/linalg.hpp"
#include "kslat/projection.hpp"

using namespace kslat;

namespace {

CMat cmat2(Complex a, Complex b, Complex c, Complex d) {
  CMat m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

XMat xmat2(Surd a, Surd b, Surd c, Surd d) {
  XMat m(2, 2);
  m(0, 0) = XComplex(a);
  m(0, 1) = XComplex(b);
  m(1, 0) = XComplex(c);
  m(1, 1) = XComplex(d);
  return m;
}

}  // namespace

TEST_CASE("hermitian and commutation predicates") {
  CMat a = cmat2(1, Complex(0, 1), Complex(0, -1), 2);
  CHECK(is_hermitian(a, 1e-12));
  CMat b = cmat2(0, 1, 0, 0);
  CHECK_FALSE(is_hermitian(b, 1e-12));
  CHECK(commutes(a, a));
  CHECK_FALSE(commutes(a, b));
  CHECK_THROWS_AS(commutes(a, CMat::identity(3)), DimensionMismatch);
}

TEST_CASE("float spectral decomposition of a 2x2 reflection") {
  // sigma_x has eigenvalues -1, 1 with projections (I -+ sigma_x)/2
  CMat sx = cmat2(0, 1, 1, 0);
  auto dec = spectral_decompose(sx);
  REQUIRE(dec.eigenvalues.size() == 2);
  CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(dec.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(dec.reconstruct().approx_equal(sx, 1e-12));
  for (const auto& p : dec.projections) {
    CHECK((p * p).approx_equal(p, 1e-12));
    CHECK(is_hermitian(p, 1e-12));
  }
  CHECK((dec.projections[0] * dec.projections[1]).is_zero(1e-12));
}

TEST_CASE("degenerate eigenvalues are merged into one projection") {
  CMat id3 = CMat::identity(3);
  auto dec = spectral_decompose(id3);
  REQUIRE(dec.eigenvalues.size() == 1);
  CHECK(dec.projections[0].approx_equal(id3, 1e-12));
}

TEST_CASE("near-gap spectra are refused rather than misclustered") {
  CMat a = CMat::zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0 + 3e-7;  // between gap and 10*gap
  CHECK_THROWS_AS(spectral_decompose(a), NumericalDegeneracy);
}

TEST_CASE("exact spectral decomposition in Q(sqrt 2)") {
  // sqrt(2) * sigma_x: eigenvalues -+ sqrt(2), recognized and verified
  XMat a = xmat2(Surd(0), Surd::sqrt_of(2), Surd::sqrt_of(2), Surd(0));
  auto dec = spectral_decompose(a);
  REQUIRE(dec.eigenvalues.size() == 2);
  CHECK(dec.eigenvalues[0] == -Surd::sqrt_of(2));
  CHECK(dec.eigenvalues[1] == Surd::sqrt_of(2));
  XMat sum = dec.projections[0] + dec.projections[1];
  CHECK(sum == XMat::identity(2));
  CHECK(dec.reconstruct() == a);
}

TEST_CASE("spectra outside the working field are rejected") {
  // [[0,1],[1,1]] has eigenvalues (1 -+ sqrt 5)/2, not in Q (radicand 0 here)
  XMat a = xmat2(Surd(0), Surd(1), Surd(1), Surd(1));
  CHECK_THROWS_AS(spectral_decompose(a), SpectrumNotInField);
}

TEST_CASE("tabulated functions apply through the spectral calculus") {
  CMat sx = cmat2(0, 1, 1, 0);
  std::vector<double> spec{-1.0, 1.0};
  auto sq = BorelFn<Complex>::square_on(spec);
  CHECK(borel_apply(sq, sx).approx_equal(CMat::identity(2), 1e-12));
  auto ind = BorelFn<Complex>::indicator_on(spec, {1.0});
  CMat pos = borel_apply(ind, sx);
  CHECK((pos * pos).approx_equal(pos, 1e-12));
  CHECK(pos.trace().real() == doctest::Approx(1.0));
  // evaluation off the table is a domain error
  CHECK_THROWS_AS(sq(0.5), DomainGap);
}

TEST_CASE("function application in exact mode keeps exact entries") {
  XMat a = xmat2(Surd(0), Surd::sqrt_of(2), Surd::sqrt_of(2), Surd(0));
  auto dec = spectral_decompose(a);
  auto sq = BorelFn<XComplex>::square_on(dec.eigenvalues);
  XMat a2 = borel_apply(sq, a);
  CHECK(a2 == a * a);
  CHECK(a2(0, 0) == XComplex(Surd(2)));
}

TEST_CASE("non-self-adjoint input is rejected") {
  CMat b = cmat2(0, 1, 0, 0);
  CHECK_THROWS_AS(spectral_decompose(b), NotSelfAdjoint);
}
