#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracle_values.hpp"
#include "support.hpp"

using namespace testing;

namespace {

Element scalar(Complex c) { return Element::constant(Algebra::scalars(), c); }

MonicPoly scalar_monic(const std::vector<Complex>& lower) {
  std::vector<Element> c;
  for (auto v : lower) c.push_back(scalar(v));
  return MonicPoly(Algebra::scalars(), c);
}

// x^n + a0 over a pointwise algebra
MonicPoly binomial(const AlgebraHandle& a, std::size_t n, const Element& a0) {
  std::vector<Element> lower(n, Element::zero(a));
  lower[0] = a0;
  return MonicPoly(a, lower);
}

std::size_t span_dim(const std::vector<CVector>& vs, std::size_t dim) {
  if (vs.empty()) return 0;
  CMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vs[j];
  return numerics::numerical_rank(m);
}

}  // namespace

TEST_CASE("minimal norm parameter") {
  auto p2 = pointwise(2);
  // ||a1|| = 1, ||a0|| = 2
  auto t = min_norm_parameter(monic(p2, {values(p2, {2, 1}), values(p2, {Complex(0, 1), 0.5})}));
  CHECK(t.minimal);
  CHECK(t.t == doctest::Approx(oracle::kMinT_quadratic).epsilon(1e-12));
  CHECK(min_norm_parameter(monic(p2, {Element::zero(p2), Element::zero(p2), Element::zero(p2)})).t == 1.0);
  auto d = disc(16, 4);
  CHECK(min_norm_parameter(monic(d, {-zfun(d), Element::zero(d)})).t == doctest::Approx(1.0).epsilon(1e-12));
  t = min_norm_parameter(scalar_monic({0.125, 0.25, 0.5}));
  CHECK(t.t == doctest::Approx(oracle::kMinT_cubic).epsilon(1e-12));

  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const auto alpha = rand_monic(p2, rng, 1 + static_cast<std::size_t>(i % 4));
    const double tm = min_norm_parameter(alpha).t;
    CHECK(satisfies_parameter_condition(alpha, tm));
    CHECK_FALSE(satisfies_parameter_condition(alpha, tm * (1 - 1e-9)));
    CHECK(satisfies_parameter_condition(alpha, 2 * tm));
  }
}

TEST_CASE("supplied parameters") {
  auto c = Algebra::scalars();
  const auto alpha = scalar_monic({1, 0});
  CHECK_NOTHROW(ah_extend(c, alpha, NormParameter{3.0, false}));
  try {
    (void)ah_extend(c, alpha, NormParameter{0.5, false});
    FAIL("expected InvalidParameter");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
  }
  CHECK_THROWS_AS(ah_extend(pointwise(2), alpha), Error);

  // power-sum aware choice: t^k >= ||q_k|| for k >= 1
  std::mt19937_64 rng(22);
  auto p3 = pointwise(3);
  for (int i = 0; i < 50; ++i) {
    const auto f = rand_monic(p3, rng, 2 + static_cast<std::size_t>(i % 3));
    const auto tp = power_sum_parameter(f);
    const auto q = power_sums(f);
    CHECK(tp.t >= min_norm_parameter(f).t);
    for (std::size_t k = 1; k < q.size(); ++k) CHECK(std::pow(tp.t, static_cast<double>(k)) >= norm(q[k]) * (1 - 1e-12));
    const auto b = ah_extend(p3, f, tp);
    CHECK(b->t() == tp.t);
  }
}

TEST_CASE("embedding is isometric") {
  std::mt19937_64 rng(23);
  auto p3 = pointwise(3);
  auto d = disc(16, 6);
  for (const auto& a : std::vector<AlgebraHandle>{p3, ah_extend(p3, rand_monic(p3, rng, 2))}) {
    const auto b = ah_extend(a, rand_monic(a, rng, 3));
    for (int i = 0; i < 100; ++i) {
      const Element x = rand_elem(a, rng);
      CHECK(std::abs(norm(embed(b, x)) - norm(x)) <= 1e-12 * std::max(1.0, norm(x)));
    }
  }
  const auto bd = ah_extend(d, monic(d, {-zfun(d), Element::zero(d)}));
  for (int i = 0; i < 50; ++i) {
    const Element x = rand_poly(d, rng, 6);
    CHECK(std::abs(norm(embed(bd, x)) - norm(x)) <= 1e-12 * std::max(1.0, norm(x)));
  }
}

TEST_CASE("norm equivalence constants") {
  auto c = Algebra::scalars();
  const auto alpha = scalar_monic({-1, 0});
  auto k = norm_equivalence_constants(alpha, {1.0, true}, {1.0, true});
  CHECK(k.lower == 1.0);
  CHECK(k.upper == 1.0);
  k = norm_equivalence_constants(alpha, {1.0, true}, {2.0, false});
  CHECK(k.lower == doctest::Approx(0.5));
  CHECK(k.upper == 1.0);
  try {
    (void)norm_equivalence_constants(alpha, {2.0, false}, {1.0, true});
    FAIL("expected ParameterOrder");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParameterOrder);
  }

  std::mt19937_64 rng(24);
  auto p2 = pointwise(2);
  for (int i = 0; i < 30; ++i) {
    const auto f = rand_monic(p2, rng, 2 + static_cast<std::size_t>(i % 3));
    const NormParameter t1 = min_norm_parameter(f);
    const NormParameter t2{t1.t * (1.0 + 3.0 * std::uniform_real_distribution<double>()(rng)), false};
    const auto b1 = ah_extend(p2, f, t1);
    const auto b2 = ah_extend(p2, f, t2);
    const auto kk = norm_equivalence_constants(f, t1, t2);
    for (int j = 0; j < 20; ++j) {
      const CVector v = rand_elem(b1, rng).coords();
      const double n1 = norm(Element(b1, v)), n2 = norm(Element(b2, v));
      CHECK(kk.lower * n2 <= n1 * (1 + 1e-12));
      CHECK(n1 <= kk.upper * n2 * (1 + 1e-12));
    }
  }
}

TEST_CASE("character examples") {
  auto c = Algebra::scalars();
  auto b = ah_extend(c, scalar_monic({1, 0}));
  auto chars = characters(b);
  REQUIRE(chars.size() == 2);
  CHECK(std::abs(chars[0].root_path.at(0) - Complex(0, -1)) < 1e-12);
  CHECK(std::abs(chars[1].root_path.at(0) - Complex(0, 1)) < 1e-12);

  auto p2 = pointwise(2);
  auto b2 = ah_extend(p2, monic(p2, {values(p2, {-1, 0}), Element::zero(p2)}));
  chars = characters(b2);
  REQUIRE(chars.size() == 3);
  std::size_t over_second = 0;
  for (const auto& h : chars) {
    if (h.base_point == 1) {
      ++over_second;
      CHECK(std::abs(h.root_path[0]) < 1e-7);
    } else {
      CHECK(std::abs(std::abs(h.root_path[0].real()) - 1.0) < 1e-12);
    }
  }
  CHECK(over_second == 1);

  const auto tower = standard_extend(c, {scalar_monic({1, 0}), scalar_monic({-1, 0, 0})});
  CHECK(tower.top()->dim() == 6);
  CHECK(characters(tower.top()).size() == 6);
}

TEST_CASE("character invariants on random extensions") {
  std::mt19937_64 rng(25);
  for (int i = 0; i < 40; ++i) {
    auto a = pointwise(2 + static_cast<std::size_t>(i % 3));
    const auto alpha = rand_monic(a, rng, 2 + static_cast<std::size_t>(i % 2));
    const auto b = ah_extend(a, alpha);
    const auto chars = characters(b);
    CHECK(chars.size() == a->dim() * alpha.degree());
    for (const auto& h : chars) {
      CHECK(std::abs(h.root_path[0]) <= b->t() * (1 + 1e-9));
      const auto hb = characters(a)[h.base_point];
      CHECK(std::abs(numerics::eval_monic(scalar_lower(alpha, hb), h.root_path[0])) <= 1e-8);
      CHECK(std::abs(h(Element::one(b)) - 1.0) < 1e-12);
      for (int j = 0; j < 10; ++j) {
        const Element x = rand_elem(b, rng), y = rand_elem(b, rng);
        CHECK(std::abs(h(x)) <= norm(x) * (1 + 1e-9));
        CHECK(std::abs(h(x * y) - h(x) * h(y)) <= 1e-8 * (1 + norm(x) * norm(y)));
      }
    }
  }
}

TEST_CASE("repeated roots collapse characters") {
  std::mt19937_64 rng(26);
  auto a = pointwise(3);
  for (int i = 0; i < 20; ++i) {
    // (x - r)^2 (x - s) at point 0, generic elsewhere
    const Complex r = rand_c(rng), s = rand_c(rng);
    std::vector<Element> lower;
    const Complex c0 = -r * r * s, c1 = r * r + 2.0 * r * s, c2 = -(2.0 * r + s);
    lower.push_back(values(a, {c0, rand_c(rng), rand_c(rng)}));
    lower.push_back(values(a, {c1, rand_c(rng), rand_c(rng)}));
    lower.push_back(values(a, {c2, rand_c(rng), rand_c(rng)}));
    const MonicPoly alpha(a, lower);
    const auto b = ah_extend(a, alpha);
    CHECK(characters(b).size() == 8);
    const Element d = discriminant(alpha);
    CHECK(std::abs(d.coords()[0]) < 1e-8 * std::max(1.0, norm(d)));
    CHECK(is_zero_divisor(d, Tolerances{}));
    CHECK_FALSE(is_tractable(b));
  }
}

TEST_CASE("evaluation characters are injective on pointwise algebras") {
  auto a = pointwise(6);
  const auto chars = characters(a);
  REQUIRE(chars.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(chars[i].base_point == i);
    for (std::size_t j = 0; j < 6; ++j) CHECK(chars[i](Element::basis(a, j)) == (i == j ? Complex(1) : Complex(0)));
  }
  CHECK(is_tractable(a));
  CHECK(radical(a).empty());
}

TEST_CASE("radical dichotomy for x^2 - a0") {
  auto p2 = pointwise(2);
  auto b = ah_extend(p2, monic(p2, {values(p2, {-1, 0}), Element::zero(p2)}));
  const auto rad = radical(b);
  REQUIRE(rad.size() == 1);
  // proportional to (0,1) xbar: coordinates (0, 0, 0, 1)
  const CVector v = rad[0].coords() / rad[0].coords()[3];
  CHECK(max_abs(v - Eigen::Vector4cd(0, 0, 0, 1)) < 1e-10);
  CHECK_FALSE(is_tractable(b));
  CHECK(radical(ah_extend(p2, monic(p2, {values(p2, {-1, -2}), Element::zero(p2)}))).empty());
}

TEST_CASE("binomial extensions: tractable iff a0 has no zero coordinate") {
  std::mt19937_64 rng(27);
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = 2 + static_cast<std::size_t>(i % 3);
    const std::size_t n = 2 + static_cast<std::size_t>((i / 3) % 3);
    auto a = pointwise(m);
    std::vector<Complex> v;
    bool has_zero = false;
    for (std::size_t k = 0; k < m; ++k) {
      const bool zero = (i % 2 == 0) && k == static_cast<std::size_t>(i) % m;
      v.push_back(zero ? Complex(0) : rand_c(rng));
      has_zero = has_zero || zero;
    }
    const auto alpha = binomial(a, n, values(a, v));
    CHECK(is_tractable(ah_extend(a, alpha)) == !has_zero);
    const auto fc = tractability_forecast(a, alpha);
    CHECK(fc.binomial);
    CHECK(fc.prediction == (has_zero ? Forecast::NotTractable : Forecast::Tractable));
  }
}

TEST_CASE("nonzero-divisor discriminants give tractable extensions") {
  std::mt19937_64 rng(28);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    auto a = pointwise(2 + static_cast<std::size_t>(i % 3));
    const auto alpha = rand_monic(a, rng, 2 + static_cast<std::size_t>(i % 2));
    const auto fc = tractability_forecast(a, alpha);
    if (fc.discriminant_zero || fc.discriminant_zero_divisor) continue;
    ++checked;
    CHECK(fc.prediction == Forecast::Tractable);
    CHECK(radical(ah_extend(a, alpha)).empty());
  }
  CHECK(checked >= 190);
}

TEST_CASE("forecast examples") {
  auto d = disc(16, 4);
  const auto fd = tractability_forecast(d, monic(d, {-zfun(d), Element::zero(d)}));
  CHECK(approx_equal(fd.discriminant, -4.0 * zfun(d)));
  CHECK_FALSE(fd.discriminant_zero_divisor);
  CHECK(fd.prediction == Forecast::Tractable);

  auto p2 = pointwise(2);
  CHECK(tractability_forecast(p2, monic(p2, {values(p2, {-1, 0}), Element::zero(p2)})).prediction ==
        Forecast::NotTractable);
  CHECK(tractability_forecast(Algebra::scalars(), scalar_monic({2, -3, 0.5})).prediction == Forecast::Tractable);
  // repeated root but not binomial
  const auto u = tractability_forecast(Algebra::scalars(), scalar_monic({1, -2}));
  CHECK(u.discriminant_zero);
  CHECK(u.prediction == Forecast::Unknown);
  CHECK(std::string(to_string(Forecast::Unknown)) == "unknown");
}

TEST_CASE("quotient by the radical") {
  std::mt19937_64 rng(29);
  auto p2 = pointwise(2);
  const auto alpha = monic(p2, {values(p2, {-1, 0}), Element::zero(p2)});
  const auto b = ah_extend(p2, alpha);
  const QuotientAlgebra q(b);
  CHECK(q.dim() == 3);
  CHECK(q.is_tractable());
  CHECK_FALSE(q.is_identity());

  // alpha(xbar + rad) = 0 in the quotient
  const CVector xb = q.project(generator(b));
  CVector acc = q.project(embed(b, alpha.lower()[0]));
  acc += q.multiply(xb, xb);
  CHECK(max_abs(acc) < 1e-12);

  // projection is a homomorphism and kills the radical
  for (int i = 0; i < 20; ++i) {
    const Element x = rand_elem(b, rng), y = rand_elem(b, rng);
    CHECK(max_abs(q.project(x * y) - q.multiply(q.project(x), q.project(y))) < 1e-10 * (1 + norm(x) * norm(y)));
    CHECK(q.norm(q.project(x)) <= norm(x) * (1 + 1e-9));
  }
  CHECK(max_abs(q.project(q.radical()[0])) < 1e-12);

  const auto bt = ah_extend(p2, monic(p2, {values(p2, {-1, -2}), Element::zero(p2)}));
  const QuotientAlgebra qt(bt);
  CHECK(qt.is_identity());
  CHECK(qt.dim() == 4);
  const Element x = rand_elem(bt, rng);
  CHECK(qt.norm(qt.project(x)) == doctest::Approx(norm(x)).epsilon(1e-12));
}

TEST_CASE("quotient keeps base norms under the power-sum parameter") {
  // checked empirically, the isometry is not assumed
  std::mt19937_64 rng(30);
  auto p3 = pointwise(3);
  for (int i = 0; i < 10; ++i) {
    std::vector<Complex> v{rand_c(rng), rand_c(rng), 0.0};
    const auto alpha = binomial(p3, 2 + static_cast<std::size_t>(i % 2), values(p3, v));
    const auto b = ah_extend(p3, alpha, power_sum_parameter(alpha));
    const QuotientAlgebra q(b);
    REQUIRE_FALSE(q.is_identity());
    for (int j = 0; j < 10; ++j) {
      const Element a = rand_elem(p3, rng);
      CHECK(q.norm(q.project(embed(b, a))) == doctest::Approx(norm(a)).epsilon(1e-6));
    }
  }
}

TEST_CASE("universal maps") {
  std::mt19937_64 rng(31);
  auto a1 = pointwise(3);
  const auto alpha = rand_monic(a1, rng, 2);
  const auto b1 = ah_extend(a1, alpha);
  SUBCASE("identity") {
    const auto phi = universal_map(Homomorphism::identity(a1), Homomorphism::embedding(b1), b1, generator(b1));
    CHECK((phi.matrix - CMatrix::Identity(6, 6)).norm() < 1e-12);
  }
  SUBCASE("coefficientwise map") {
    auto a2 = pointwise(2);
    const auto phi0 = Homomorphism::restriction(a1, a2, {2, 0});
    const auto b2 = ah_extend(a2, map_coeffs(alpha, phi0));
    const auto theta = Homomorphism::embedding(b2);
    const auto phi = universal_map(phi0, theta, b1, generator(b2));
    CHECK(approx_equal(phi(generator(b1)), generator(b2)));
    for (int i = 0; i < 20; ++i) {
      const Element x = rand_elem(b1, rng), y = rand_elem(b1, rng);
      CHECK(approx_equal(phi(x * y), phi(x) * phi(y), 1e-10 * (1 + norm(x) * norm(y))));
      const Element a = rand_elem(a1, rng);
      CHECK(approx_equal(phi(embed(b1, a)), theta(phi0(a)), 1e-12));
    }
  }
  SUBCASE("not a root") {
    try {
      (void)universal_map(Homomorphism::identity(a1), Homomorphism::embedding(b1), b1, Element::one(b1));
      FAIL("expected NotARoot");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotARoot);
    }
  }
}

TEST_CASE("standard towers") {
  std::mt19937_64 rng(32);
  auto c = Algebra::scalars();
  const auto f = scalar_monic({2, -1});
  const auto single = standard_extend(c, {f});
  CHECK(single.layers.size() == 2);
  CHECK(single.top()->dim() == ah_extend(c, f)->dim());
  CHECK(single.top()->t() == ah_extend(c, f)->t());

  for (std::size_t m = 1; m <= 3; ++m) {
    auto a = pointwise(m);
    const auto t = standard_extend(a, {monic(a, {-rand_elem(a, rng), Element::zero(a)}),
                                       monic(a, {-rand_elem(a, rng), Element::zero(a), Element::zero(a)})});
    CHECK(t.top()->dim() == 6 * m);
    const auto chars = characters(t.top());
    CHECK(chars.size() == 6 * m);
    for (std::size_t from = 0; from < 3; ++from) {
      for (std::size_t to = from; to < 3; ++to) {
        const auto e = t.embedding(from, to);
        for (int i = 0; i < 10; ++i) {
          const Element x = rand_elem(t.layers[from], rng);
          CHECK(std::abs(norm(e(x)) - norm(x)) <= 1e-12 * std::max(1.0, norm(x)));
        }
      }
    }
    // prefix property and surjectivity of restriction
    std::vector<bool> hit(m * 2, false);
    const auto mid = characters(t.layers[1]);
    for (const auto& h : chars) {
      CHECK(t.layer_of(h) == 2);
      const auto r = restrict_character(t, h, 1);
      CHECK(r.root_path.size() == 1);
      CHECK(r.root_path[0] == h.root_path[0]);
      for (std::size_t j = 0; j < mid.size(); ++j) {
        if (mid[j].base_point == r.base_point && std::abs(mid[j].root_path[0] - r.root_path[0]) < 1e-8) hit[j] = true;
      }
      const auto r0 = restrict_character(t, h, 0);
      CHECK(r0.root_path.empty());
    }
    CHECK(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }));
    for (const auto& h : characters(a)) {
      const auto full = extend_character(t, h);
      CHECK(t.layer_of(full) == 2);
      const auto back = restrict_character(t, full, 0);
      CHECK(back.base_point == h.base_point);
      CHECK(max_abs((back.values - h.values).transpose()) < 1e-12);
    }
    for (const auto& h : mid) {
      const auto full = extend_character(t, h);
      const auto back = restrict_character(t, full, 1);
      CHECK(max_abs((back.values - h.values).transpose()) < 1e-10);
      // the first root in (real, imag) order
      const auto roots = layer_roots(h, t.layers[2]);
      CHECK(std::abs(full.root_path[1] - roots.front().value) < 1e-12);
    }
  }
}

TEST_CASE("tower coefficients must lie in the ground algebra") {
  auto c = Algebra::scalars();
  const auto b = ah_extend(c, scalar_monic({1, 0}));
  const MonicPoly over_b(b, {generator(b), Element::zero(b)});
  CHECK_THROWS_AS(standard_extend(c, {scalar_monic({1, 0}), over_b}), Error);
  TowerOptions opts;
  opts.allow_layer_coefficients = true;
  const auto t = standard_extend(c, {scalar_monic({1, 0}), over_b}, opts);
  CHECK(t.top()->dim() == 4);
}

TEST_CASE("character paths") {
  auto c = Algebra::scalars();
  const auto t = standard_extend(c, {scalar_monic({1, 0}), scalar_monic({-1, 0, 0})});
  const Complex w = std::polar(1.0, 2 * M_PI / 3);
  const auto h = character_from_path(t.top(), 0, {Complex(0, 1), w});
  CHECK(std::abs(h(generator(t.top())) - w) < 1e-12);
  CHECK_THROWS_AS(character_from_path(t.top(), 0, {Complex(0, 1), Complex(2, 0)}), Error);
  CHECK_THROWS_AS(character_from_path(t.top(), 0, {Complex(0, 1)}), Error);
}

TEST_CASE("towers over tractable bases with good discriminants stay tractable") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 30; ++i) {
    auto a = pointwise(1 + static_cast<std::size_t>(i % 3));
    std::vector<MonicPoly> polys;
    for (int k = 0; k < 2; ++k) polys.push_back(rand_monic(a, rng, 2));
    bool good = true;
    for (const auto& p : polys) {
      const Element d = discriminant(p);
      good = good && !d.is_zero() && !is_zero_divisor(d);
    }
    REQUIRE(good);
    const auto t = standard_extend(a, polys);
    CHECK(is_tractable(t.top()));
    for (const auto& p : polys) {
      const Element d = discriminant(p);
      for (std::size_t k = 0; k < t.layers.size(); ++k) {
        const Element dk = t.embedding(0, k)(d);
        CHECK(numerics::numerical_rank(mult_operator(dk)) == t.layers[k]->dim());
        CHECK_FALSE(is_zero_divisor(dk));
      }
    }
  }
}

TEST_CASE("radical of the ground is the ground part of the tower radical") {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 15; ++i) {
    auto p = pointwise(2 + static_cast<std::size_t>(i % 2));
    std::vector<Complex> v;
    for (std::size_t k = 0; k < p->dim(); ++k) v.push_back(k == 0 ? Complex(0) : rand_c(rng));
    // non-tractable ground
    const auto ground = ah_extend(p, binomial(p, 2, values(p, v)));
    const auto t = standard_extend(ground, {rand_monic(ground, rng, 2)});
    const auto e = t.embedding(0, 1);
    const auto rad_a = radical(ground);
    const auto rad_b = radical(t.top());
    std::vector<CVector> image, both;
    for (std::size_t j = 0; j < ground->dim(); ++j) image.push_back(e(Element::basis(ground, j)).coords());
    both = image;
    for (const auto& r : rad_b) both.push_back(r.coords());
    const std::size_t dim_top = t.top()->dim();
    const std::size_t meet = image.size() + rad_b.size() - span_dim(both, dim_top);
    CHECK(meet == rad_a.size());
    for (const auto& r : rad_a) {
      std::vector<CVector> with = both;
      with.push_back(e(r).coords());
      CHECK(span_dim(with, dim_top) == span_dim(both, dim_top));
      std::vector<CVector> rb;
      for (const auto& x : rad_b) rb.push_back(x.coords());
      const std::size_t r0 = span_dim(rb, dim_top);
      rb.push_back(e(r).coords());
      CHECK(span_dim(rb, dim_top) == r0);
    }
  }
}
