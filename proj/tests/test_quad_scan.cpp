#include <doctest.h>

#include "modpl/field_data.hpp"
#include "modpl/quad_scan.hpp"
#include "oracles/oracles.hpp"

using namespace modpl;

namespace {

const QuadFieldRecord& field(u64 D) {
  static const auto fields = load_quad_fields(quad_fields_file());
  for (const auto& f : fields)
    if (f.D == D) return f;
  throw std::runtime_error("missing field");
}

}  // namespace

TEST_CASE("fundamental units, small D") {
  const auto u2 = fundamental_unit_quadratic(2);
  CHECK(u2.a == 1);
  CHECK(u2.b == 1);
  CHECK(u2.norm_sign == -1);
  const auto u5 = fundamental_unit_quadratic(5);
  CHECK(u5.a == 0);
  CHECK(u5.b == 1);
  CHECK(u5.norm_sign == -1);
  const auto u29 = fundamental_unit_quadratic(29);
  CHECK(u29.a == 2);
  CHECK(u29.b == 1);
  CHECK(quad_norm(29, 2, 1) == -1);
  CHECK_THROWS_AS(fundamental_unit_quadratic(4), std::invalid_argument);
  CHECK_THROWS_AS(fundamental_unit_quadratic(1), std::invalid_argument);
}

TEST_CASE("units match exhaustive Pell search for every squarefree D <= 30") {
  for (u64 D = 2; D <= 30; ++D) {
    if (!is_squarefree(D)) continue;
    CAPTURE(D);
    const auto u = fundamental_unit_quadratic(D);
    const bool half = D % 4 == 1;
    const auto sol = oracle::smallest_pell(static_cast<i64>(D), half, 10'000);
    REQUIRE(sol.has_value());
    // half basis: a + b (1 + sqrt D)/2 = (x + y sqrt D)/2  =>  b = y, a = (x - y)/2
    const BigInt b = sol->y;
    const BigInt a = half ? BigInt((sol->x - sol->y) / 2) : BigInt(sol->x);
    CHECK(u.a == a);
    CHECK(u.b == b);
    CHECK(u.norm_sign == sol->norm);
    CHECK(quad_norm(D, u.a, u.b) == u.norm_sign);
    CHECK_FALSE((u.b == 0));
  }
}

TEST_CASE("class numbers in the data file match reduced-form counts") {
  for (u64 D = 2; D <= 30; ++D) {
    if (!is_squarefree(D)) continue;
    CAPTURE(D);
    const i64 d = D % 4 == 1 ? static_cast<i64>(D) : 4 * static_cast<i64>(D);
    const int narrow = oracle::narrow_class_number_real(d);
    const auto u = fundamental_unit_quadratic(D);
    const int h = u.norm_sign == -1 ? narrow : narrow / 2;
    CHECK(field(D).class_number == static_cast<u64>(h));
    CHECK(field(D).field_disc == static_cast<u64>(d));
  }
  CHECK(field(30).class_number == 2);
}

TEST_CASE("records validate overrides") {
  QuadUnit bad{2, 1, 1};
  CHECK_THROWS_AS(make_quad_record(2, 1, bad), std::invalid_argument);
  CHECK_THROWS_AS(make_quad_record(8, 1), std::invalid_argument);
  const auto r = make_quad_record(2, 1, QuadUnit{1, 1, -1});
  CHECK(r.unit.a == 1);
  CHECK(r.spec().discriminant() == 8);
  CHECK(make_quad_record(13, 1).spec().discriminant() == 13);
}

TEST_CASE("unit test examples") {
  CHECK(quad_unit_test(field(3), 103));
  CHECK(quad_unit_test(field(6), 7));
  CHECK_FALSE(quad_unit_test(field(2), 11));
  for (u64 p : primes_in(PrimeRange(3, 9999))) {
    if (quad_verdict(field(5), p).status == VerdictStatus::excluded) continue;
    REQUIRE_FALSE(quad_unit_test(field(5), p));
  }
  CHECK_THROWS_AS(quad_unit_test(field(2), 2), std::domain_error);
  CHECK_THROWS_AS(quad_unit_test(field(7), 7), std::domain_error);
  CHECK_THROWS_AS(quad_unit_test(field(10), 2), std::domain_error);
  CHECK(quad_verdict(field(15), 5).reason == ExclusionReason::ramified);
  CHECK(quad_verdict(field(30), 2).reason == ExclusionReason::below_min_p);
}

TEST_CASE("unit test agrees with long-division powering") {
  for (u64 D : {2, 3, 5, 13, 19, 22}) {
    const auto& rec = field(D);
    const auto spec = rec.spec();
    const std::vector<i64> fv(spec.poly().begin(), spec.poly().end());
    for (u64 p : primes_in(PrimeRange(3, 400))) {
      if (quad_verdict(rec, p).status == VerdictStatus::excluded) continue;
      const u64 m = p * p;
      const BigInt bm = m;
      auto red = [&](const BigInt& x) {
        BigInt r = x % bm;
        if (r < 0) r += bm;
        return static_cast<u64>(r);
      };
      const oracle::Poly eps{red(rec.unit.a), red(rec.unit.b)};
      const auto pw = oracle::poly_powmod(eps, static_cast<oracle::u128>(m) - 1, fv, m);
      REQUIRE(quad_unit_test(rec, p) == (pw == oracle::Poly{1, 0}));
    }
  }
}

TEST_CASE("scans") {
  const PrimeRange r(3, 9999);
  CHECK(scan_quadratic(field(2), r).hit_primes() == std::vector<u64>{13, 31});
  CHECK(scan_quadratic(field(15), r).hit_primes() == std::vector<u64>{181, 1039, 2917});
  CHECK(scan_quadratic(field(22), r).hit_primes() == std::vector<u64>{43, 73, 409});
  CHECK(scan_quadratic(field(7), r).hits.empty());

  ScanOptions full;
  full.full_verdicts = true;
  const auto rep = scan_quadratic(field(2), PrimeRange(2, 50), full);
  REQUIRE(rep.others.has_value());
  CHECK(rep.hits.size() + rep.others->size() == primes_in(PrimeRange(2, 50)).size());
  CHECK(rep.others->front().reason == ExclusionReason::below_min_p);
}

TEST_CASE("serial and parallel scans agree") {
  ScanOptions one, many;
  many.workers = 4;
  const PrimeRange r(3, 200'000);
  const auto a = scan_quadratic(field(26), r, one);
  const auto b = scan_quadratic(field(26), r, many);
  CHECK(a.hit_primes() == b.hit_primes());
  CHECK(a.checksum() == b.checksum());
}
