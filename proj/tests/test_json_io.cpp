#include <catch2/catch_amalgamated.hpp>

#include "hyperocta/json_io.hpp"

using namespace hyperocta;

TEST_CASE("rational strings are exact and decimal-free") {
  CHECK(rat_to_string(Rat(3)) == "3");
  CHECK(rat_to_string(Rat(-7, 4)) == "-7/4");
  CHECK(rat_from_string("22/7") == Rat(22, 7));
  CHECK_THROWS_AS(rat_from_string("0.5"), DomainError);
  CHECK_THROWS_AS(rat_from_string(""), DomainError);
  // big values survive the round trip
  const Rat big = Rat(Int("123456789123456789123456789"), Int("998877665544332211"));
  CHECK(rat_from_string(rat_to_string(big)) == big);
}

TEST_CASE("relation schema round trip") {
  FormalSum lam(6, 3);
  lam.add_term(Subset{1, 2, 3}, Int("98765432109876543210"));
  lam.add_term(Subset{4, 5, 6}, -1);
  const json j = formal_sum_to_json(lam);
  CHECK(j.at("n") == 6);
  CHECK(j.at("terms")[0].at("coeff").is_string());
  CHECK(formal_sum_from_json(j) == lam);
}

TEST_CASE("polynomial schema round trip") {
  Poly p;
  p.add_term(Monomial({{1, 2}, {3, 1}}), Rat(5, 3));
  p.add_term(Monomial::one(), Rat(-2));
  const json j = poly_to_json(p);
  CHECK(poly_from_json(j) == p);
  // exponent maps are keyed by 1-based variable index
  bool found = false;
  for (const json& term : j)
    if (term.at("exps").contains("3")) found = true;
  CHECK(found);
}

TEST_CASE("lattice schema round trip preserves canonical bases") {
  const Lattice l = left_kernel(inclusion_matrix(5, 2, 1));
  const json j = lattice_to_json(l);
  CHECK(j.at("ambient") == binomial(5, 2));
  const Lattice back = lattice_from_json(j);
  CHECK(lattices_equal(l, back));
  CHECK(l == back);
}

TEST_CASE("spec schema round trip") {
  const OctaSpec spec(6, 3, Subset{2}, {{1, 6}, {3, 5}});
  const json j = spec_to_json(spec);
  CHECK(spec_from_json(j) == spec);
}

TEST_CASE("kernel report schema") {
  const KernelReport r = verify_ek_kernel(4, 2, 1);
  const json j = report_to_json(r);
  for (const char* key :
       {"n", "m", "k", "kernel_rank", "g_rank", "equal", "elapsed_ms"})
    CHECK(j.contains(key));
  const KernelReport back = report_from_json(j);
  CHECK(back.kernel_rank == r.kernel_rank);
  CHECK(back.equal == r.equal);
}

TEST_CASE("algebra and tensor schema round trip") {
  const auto alg = Algebra::p1xp1();
  const json j = algebra_to_json(*alg);
  const auto back = algebra_from_json(j);
  CHECK(back->dim() == 4);
  CHECK(back->unit() == 0);
  CHECK(back->mul_vec(1, 2) == alg->mul_vec(1, 2));

  Tensor t(alg, 2);
  t.add_term({1, 2}, Rat(1, 2));
  t.add_term({0, 3}, -3);
  const json tj = tensor_to_json(t);
  CHECK(tensor_from_json(alg, tj) == t);
}

TEST_CASE("malformed inputs raise domain errors") {
  CHECK_THROWS_AS(subset_from_json(json{{"not", "array"}}), DomainError);
  CHECK_THROWS_AS(int_from_json(json(1.5)), DomainError);
  CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"), DomainError);
}
