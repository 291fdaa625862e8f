#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"

using namespace testing;

TEST_CASE("pointwise arithmetic") {
  auto a = pointwise(2);
  CHECK(approx_equal(values(a, {1, 0}) * values(a, {0, 1}), Element::zero(a)));
  CHECK(norm(values(a, {3.0, Complex(0, -4)})) == doctest::Approx(4.0));
  CHECK(norm(Element::one(a)) == doctest::Approx(1.0));
  CHECK(is_zero_divisor(values(a, {1, 0})));
  CHECK_FALSE(is_zero_divisor(values(a, {1, 2})));
  CHECK_FALSE(is_zero_divisor(Element::zero(a)));
  const CMatrix m = mult_operator(values(a, {2, 3}));
  CHECK((m - CMatrix(Eigen::Vector2cd(2, 3).asDiagonal())).norm() < 1e-15);
}

TEST_CASE("owner mismatch") {
  auto a = pointwise(2);
  auto b = pointwise(2);
  CHECK_THROWS_AS(Element::one(a) + Element::one(b), Error);
  try {
    (void)(Element::one(a) * Element::one(b));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OwnerMismatch);
  }
}

TEST_CASE("poly model degree bookkeeping") {
  auto a = disc(8, 3);
  auto z = zfun(a);
  CHECK(approx_equal(z * (z * z), Element::from_values(a, {0, 0, 0, 1})));
  try {
    (void)((z * z) * (z * z));
    FAIL("expected DegreeOverflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegreeOverflow);
  }
  CHECK_FALSE(is_zero_divisor(z - Element::one(a)));
  CHECK(norm(z - Element::one(a)) == doctest::Approx(2.0));
  CHECK(mult_operator(z).rows() == 7);
  CHECK(mult_operator(z).cols() == 4);
}

TEST_CASE("poly model needs enough points") {
  CHECK_THROWS_AS(disc(3, 3), Error);
  CHECK_NOTHROW(disc(4, 3));
  CHECK_THROWS_AS(Algebra::poly_model(PointSet::abstract(5), 2), Error);
}

TEST_CASE("extension of C by x^2 + 1") {
  auto c = Algebra::scalars();
  auto b = ah_extend(c, monic(c, {Element::one(c), Element::zero(c)}));
  const Element x = generator(b);
  CHECK(approx_equal(x * x, -Element::one(b)));
  CHECK(norm(x) == doctest::Approx(b->t()));
  CMatrix expect(2, 2);
  expect << 0, -1, 1, 0;
  CHECK((mult_operator(x) - expect).norm() < 1e-15);
  CHECK(spectral_radius(x) == doctest::Approx(1.0));
  CHECK(spectral_radius(Element::one(b)) == doctest::Approx(1.0));
}

TEST_CASE("spectral radius of pointwise elements") {
  auto a = pointwise(2);
  CHECK(spectral_radius(values(a, {3.0, Complex(0, -4)})) == doctest::Approx(4.0));
}

TEST_CASE("AH norm of f + g xbar on the disc") {
  auto a = disc(64, 8);
  auto z = zfun(a);
  auto one = Element::one(a);
  auto b = ah_extend(a, monic(a, {-z, Element::zero(a)}), NormParameter{1.0, false});
  const Element f = 0.5 * (z + one);
  const Element g = 0.5 * (z - one);
  CHECK(norm(Element::from_coefficients(b, {f, g})) == doctest::Approx(2.0).epsilon(1e-12));
}

namespace {

std::vector<AlgebraHandle> sample_algebras() {
  auto p3 = pointwise(3);
  auto d = disc(16, 6);
  auto c = Algebra::scalars();
  std::vector<AlgebraHandle> out{p3, d};
  auto z = zfun(d);
  out.push_back(ah_extend(p3, monic(p3, {values(p3, {1, -2, Complex(0, 1)}), values(p3, {0.5, 0, 1})})));
  out.push_back(ah_extend(c, monic(c, {Element::constant(c, 2.0), Element::zero(c), Element::constant(c, -1.0)})));
  // degree-1 coefficients keep products inside the degree bound
  out.push_back(ah_extend(d, monic(d, {-z, Element::zero(d)})));
  return out;
}

Element small(const AlgebraHandle& a, std::mt19937_64& rng) {
  if (a->backend() == Backend::PolyModel) return rand_poly(a, rng, a->degree_bound() / 2);
  if (a->backend() == Backend::AHExtension && a->ground()->backend() == Backend::PolyModel) {
    std::vector<Element> c;
    for (std::size_t k = 0; k < a->degree(); ++k) c.push_back(rand_poly(a->base(), rng, 1));
    return Element::from_coefficients(a, c);
  }
  return rand_elem(a, rng);
}

}  // namespace

TEST_CASE("norm axioms on random elements") {
  std::mt19937_64 rng(5);
  for (const auto& a : sample_algebras()) {
    CAPTURE(a->describe());
    CHECK(norm(Element::one(a)) == doctest::Approx(1.0));
    CHECK(norm(Element::zero(a)) == 0.0);
    for (int i = 0; i < 100; ++i) {
      const Element x = small(a, rng);
      const Element y = small(a, rng);
      const Complex s = rand_c(rng);
      CHECK(norm(x + y) <= norm(x) + norm(y) + 1e-12);
      CHECK(norm(s * x) == doctest::Approx(std::abs(s) * norm(x)).epsilon(1e-12));
      CHECK(norm(x * y) <= norm(x) * norm(y) * (1 + 1e-12));
      CHECK(norm(x) > 0.0);
      CHECK(spectral_radius(x) <= norm(x) * (1 + 1e-9));
    }
  }
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937_64 rng(6);
  for (const auto& a : sample_algebras()) {
    if (a->backend() == Backend::PolyModel) continue;
    if (a->ground()->backend() == Backend::PolyModel) continue;
    CAPTURE(a->describe());
    for (int i = 0; i < 50; ++i) {
      const Element x = rand_elem(a, rng), y = rand_elem(a, rng), w = rand_elem(a, rng);
      const double s = 1 + norm(x) * norm(y) * norm(w);
      CHECK(approx_equal(x * y, y * x, 1e-10 * s));
      CHECK(approx_equal((x * y) * w, x * (y * w), 1e-9 * s));
      CHECK(approx_equal(x * (y + w), x * y + x * w, 1e-10 * s));
      CHECK(approx_equal(Element::one(a) * x, x, 1e-12 * s));
    }
  }
}

TEST_CASE("singular multiplication operator matches a brute-force annihilator search") {
  // dim <= 4; annihilators searched on a grid of small integer combinations
  std::vector<AlgebraHandle> algebras;
  auto p2 = pointwise(2);
  auto c = Algebra::scalars();
  algebras.push_back(pointwise(4));
  algebras.push_back(ah_extend(p2, monic(p2, {values(p2, {-1, 0}), Element::zero(p2)})));
  algebras.push_back(ah_extend(c, monic(c, {Element::zero(c), Element::zero(c)})));  // C[x]/(x^2)
  algebras.push_back(ah_extend(c, monic(c, {Element::constant(c, -1.0), Element::zero(c)})));
  for (const auto& a : algebras) {
    CAPTURE(a->describe());
    const std::size_t n = a->dim();
    std::vector<Element> grid;
    std::vector<int> digits(n, -1);
    for (;;) {
      CVector v(static_cast<Eigen::Index>(n));
      for (std::size_t k = 0; k < n; ++k) v[static_cast<Eigen::Index>(k)] = digits[k];
      grid.emplace_back(a, v);
      std::size_t k = 0;
      while (k < n && digits[k] == 1) digits[k++] = -1;
      if (k == n) break;
      ++digits[k];
    }
    for (const auto& x : grid) {
      bool annihilated = false;
      if (!x.is_zero()) {
        for (const auto& y : grid) {
          if (!y.is_zero() && (x * y).is_zero()) annihilated = true;
        }
      }
      const bool singular = numerics::numerical_rank(mult_operator(x)) < n;
      CHECK(singular == (x.is_zero() || is_zero_divisor(x)));
      // on these algebras every zero divisor has an annihilator on the grid
      CHECK(annihilated == is_zero_divisor(x));
    }
  }
}

TEST_CASE("iterated-squaring estimate converges to the character maximum") {
  std::mt19937_64 rng(8);
  auto p3 = pointwise(3);
  auto c = Algebra::scalars();
  auto inner = ah_extend(c, rand_monic(c, rng, 2));
  std::vector<AlgebraHandle> algebras{pointwise(5), ah_extend(p3, rand_monic(p3, rng, 2)),
                                      ah_extend(c, rand_monic(c, rng, 3)), ah_extend(inner, rand_monic(inner, rng, 2))};
  for (const auto& a : algebras) {
    if (a->dim() > 8) continue;
    for (int i = 0; i < 20; ++i) {
      const Element x = rand_elem(a, rng);
      const auto est = spectral_radius_estimate(x, 20);
      REQUIRE(est.has_value());
      const double r = spectral_radius(x);
      CHECK(std::abs(*est - r) <= 1e-6 * std::max(1.0, r));
    }
  }
  // the poly model cannot square far
  auto d = disc(16, 4);
  CHECK_FALSE(spectral_radius_estimate(zfun(d), 20).has_value());
}

TEST_CASE("homomorphisms") {
  auto p2 = pointwise(2);
  auto b = ah_extend(p2, monic(p2, {values(p2, {-1, -4}), Element::zero(p2)}));
  const auto emb = Homomorphism::embedding(b);
  const Element a = values(p2, {2, 3});
  CHECK(approx_equal(emb(a), embed(b, a)));
  CHECK(approx_equal(emb(Element::one(p2)), Element::one(b)));
  const auto id = Homomorphism::identity(b);
  CHECK(approx_equal(compose(id, emb)(a), emb(a)));
  for (const auto& h : characters(b)) {
    const auto hom = Homomorphism::from_character(b, h);
    CHECK(std::abs(hom(generator(b)).coords()[0] - h(generator(b))) < 1e-14);
  }
  auto p3 = pointwise(3);
  const auto r = Homomorphism::restriction(p3, p2, {2, 0});
  CHECK(approx_equal(r(values(p3, {1, 2, 3})), values(p2, {3, 1})));
}
