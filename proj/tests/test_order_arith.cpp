#include <doctest.h>

#include <random>

#include "modpl/order_arith.hpp"
#include "oracles/oracles.hpp"

using namespace modpl;

namespace {

OrderElem elem(const QuotientRing& R, std::vector<i64> c) { return R.from_ints(c); }

std::vector<u64> as_vec(const OrderElem& a) { return {a.coeffs.begin(), a.coeffs.begin() + a.degree}; }

}  // namespace

TEST_CASE("quadratic and cubic products") {
  const OrderSpec sqrt2({-2, 0, 1});
  const QuotientRing R2(sqrt2, Modulus(5, 2));
  const auto x = elem(R2, {1, 1});
  CHECK(R2.mul(x, x) == elem(R2, {3, 2}));
  CHECK(R2.mul(x, R2.one()) == x);

  const OrderSpec f({-1, -1, 0, 1});
  const QuotientRing R3(f, Modulus(7, 2));
  CHECK(R3.mul(R3.theta(), R3.mul(R3.theta(), R3.theta())) == elem(R3, {1, 1, 0}));
  CHECK(elem_mul(R3.theta(), elem(R3, {0, 0, 1}), f, Modulus(7, 2)) == elem(R3, {1, 1, 0}));
}

TEST_CASE("order validation") {
  CHECK_THROWS_AS(OrderSpec({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(OrderSpec({-1, -1, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(OrderSpec({0, 0, 1}), std::invalid_argument);  // x^2 not squarefree
  CHECK_THROWS_AS(OrderSpec({-1, -1, 0, 1}, -22), std::invalid_argument);
  CHECK(OrderSpec({-1, -1, 0, 1}, -23).discriminant() == -23);
  CHECK(OrderSpec({-2, 0, 1}).discriminant() == 8);
  CHECK_THROWS_AS(Modulus(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(Modulus(7, 3), std::invalid_argument);
}

TEST_CASE("discriminant matches the textbook cubic formula") {
  for (i64 a = -4; a <= 4; ++a)
    for (i64 b = -4; b <= 4; ++b)
      for (i64 c = -4; c <= 4; ++c) {
        const std::vector<i64> f{c, b, a, 1};
        CHECK(poly_discriminant(f) == oracle::cubic_disc(a, b, c));
      }
}

TEST_CASE("powers in Z[sqrt 2] mod p^2") {
  const OrderSpec sqrt2({-2, 0, 1});
  const QuotientRing R13(sqrt2, Modulus(13, 2));
  CHECK(R13.pow(elem(R13, {1, 1}), 168) == R13.one());
  const QuotientRing R11(sqrt2, Modulus(11, 2));
  CHECK(R11.pow(elem(R11, {1, 1}), 120) != R11.one());
  CHECK(R11.pow(elem(R11, {4, 7}), 0) == R11.one());
  CHECK(elem_pow(elem(R13, {1, 1}), 168, sqrt2, Modulus(13, 2)) == R13.one());
}

TEST_CASE("ring laws hold exhaustively for small moduli") {
  const std::vector<std::vector<i64>> polys{{-2, 0, 1}, {-1, -1, 1}, {-1, -1, 0, 1}, {-2, 1, -1, 1}};
  for (const auto& poly : polys) {
    const OrderSpec spec(poly);
    for (auto [p, k] : {std::pair<u64, int>{2, 1}, {3, 1}, {2, 2}, {3, 2}, {5, 1}, {7, 1}}) {
      const QuotientRing R(spec, Modulus(p, k));
      const u64 m = R.m();
      if (spec.degree() == 3 && m > 5) continue;  // keep the cubic cube of triples small
      std::vector<OrderElem> all;
      const int d = spec.degree();
      u64 total = 1;
      for (int i = 0; i < d; ++i) total *= m;
      for (u64 code = 0; code < total; ++code) {
        OrderElem e = R.zero();
        u64 c = code;
        for (int i = 0; i < d; ++i) {
          e.coeffs[static_cast<std::size_t>(i)] = c % m;
          c /= m;
        }
        all.push_back(e);
      }
      for (const auto& a : all) {
        CHECK(R.mul(a, R.one()) == a);
        for (const auto& b : all) {
          REQUIRE(R.mul(a, b) == R.mul(b, a));
          // compare against long division
          oracle::Poly pa = as_vec(a), pb = as_vec(b);
          REQUIRE(as_vec(R.mul(a, b)) == oracle::poly_mulmod(pa, pb, poly, m));
        }
      }
      // associativity and distributivity on a sample when the cube is large
      std::mt19937_64 rng(p * 31 + static_cast<u64>(k));
      for (int t = 0; t < 2000; ++t) {
        const auto& a = all[rng() % all.size()];
        const auto& b = all[rng() % all.size()];
        const auto& c = all[rng() % all.size()];
        REQUIRE(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
        REQUIRE(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
        REQUIRE(R.add(R.sub(a, b), b) == a);
      }
    }
  }
}

TEST_CASE("pow agrees with long-division powering and is additive in the exponent") {
  const OrderSpec f({-2, 1, -1, 1});
  const std::vector<i64> fv(f.poly().begin(), f.poly().end());
  std::mt19937_64 rng(7);
  for (u64 p : {5ULL, 11ULL, 101ULL, 1009ULL, 65537ULL}) {
    if (f.discriminant() % static_cast<i64>(p) == 0) continue;
    const QuotientRing R(f, Modulus(p, 2));
    for (int t = 0; t < 20; ++t) {
      const std::vector<i64> c{static_cast<i64>(rng() % 1000) - 500, static_cast<i64>(rng() % 1000) - 500,
                               static_cast<i64>(rng() % 1000) - 500};
      const auto a = R.from_ints(c);
      const u128 e1 = rng(), e2 = (static_cast<u128>(rng()) << 20) | rng();
      CHECK(as_vec(R.pow(a, e1)) == oracle::poly_powmod(as_vec(a), e1, fv, R.m()));
      CHECK(R.pow(a, e1 + e2) == R.mul(R.pow(a, e1), R.pow(a, e2)));
    }
  }
}

TEST_CASE("exponents beyond 64 bits") {
  // p^3 - 1 for p near 10^8 is about 10^24
  const OrderSpec f({-1, -1, 0, 1});
  const u64 p = 99999989;
  const QuotientRing R(f, Modulus(p, 2));
  const u128 e = static_cast<u128>(p) * p * p - 1;
  const auto a = R.theta();
  const std::vector<i64> fv(f.poly().begin(), f.poly().end());
  CHECK(as_vec(R.pow(a, e)) == oracle::poly_powmod(as_vec(a), e, fv, R.m()));
}

TEST_CASE("Fermat in F_{p^3} for inert primes") {
  const OrderSpec f({-1, -1, 0, 1});
  for (u64 p = 2; p <= 100; ++p) {
    if (!oracle::is_prime_td(p) || p == 23) continue;
    if (frobenius_order(f, p) != 3) continue;
    const QuotientRing R(f, Modulus(p, 1));
    for (i64 a = 0; a < 3; ++a) {
      const auto x = R.from_ints(std::vector<i64>{a + 1, 2, 1});
      if (x.is_zero()) continue;
      CHECK(R.pow(x, static_cast<u128>(p) * p * p - 1) == R.one());
    }
  }
}

TEST_CASE("root counts against evaluation at every residue") {
  const OrderSpec f({-1, -1, 0, 1});
  CHECK(root_count_mod_p(f, 13) == 0);
  CHECK(root_count_mod_p(f, 7) == 1);
  CHECK(root_count_mod_p(OrderSpec({-2, 0, 1}), 7) == 2);
  CHECK(frobenius_order(f, 13) == 3);
  CHECK(frobenius_order(f, 7) == 2);
  const int r59 = oracle::brute_root_count({-1, -1, 0, 1}, 59);
  CHECK(frobenius_order(f, 59) == (r59 == 3 ? 1 : r59 == 1 ? 2 : 3));
  CHECK_THROWS_AS(root_count_mod_p(f, 23), std::domain_error);

  const std::vector<std::vector<i64>> polys{{-1, -1, 0, 1}, {-1, 1, 0, 1}, {-2, 0, 0, 1}, {2, 1, -1, 1}, {-3, 0, 1}, {-1, -1, 1}};
  for (const auto& poly : polys) {
    const OrderSpec spec(poly);
    for (u64 p = 2; p <= 1000; ++p) {
      if (!oracle::is_prime_td(p) || spec.discriminant() % static_cast<i64>(p) == 0) continue;
      REQUIRE(root_count_mod_p(spec, p) == oracle::brute_root_count(poly, p));
    }
  }
}

TEST_CASE("exact norm and product") {
  const OrderSpec f({-1, -1, 0, 1});
  const std::vector<i64> fv{-1, -1, 0, 1};
  for (i64 a = -3; a <= 3; ++a)
    for (i64 b = -3; b <= 3; ++b)
      for (i64 c = -3; c <= 3; ++c) {
        const std::vector<i64> x{a, b, c};
        REQUIRE(exact_norm(f, x) == oracle::cubic_norm(fv, a, b, c));
      }
  const std::vector<i64> t{0, 1, 0}, t2{0, 0, 1};
  CHECK(exact_mul(f, t, t2) == std::vector<i64>{1, 1, 0});
  CHECK(exact_norm(f, t) == 1);
  const OrderSpec q({-2, 0, 1});
  const std::vector<i64> u{1, 1};
  CHECK(exact_norm(q, u) == -1);
}
