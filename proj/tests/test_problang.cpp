#include <doctest.h>

#include <cmath>

#include "attrib/errors.hpp"
#include "attrib/problang.hpp"

using namespace attrib;

// Exact values and KL figures below were computed independently with Python
// fractions / mpmath before this module existed.

TEST_CASE("alternating pmfs: exact small values") {
  CHECK(pmf_p1(1) == Rational(3, 8));
  CHECK(pmf_p1(2) == Rational(3, 8));
  CHECK(pmf_p1(3) == Rational(3, 32));
  CHECK(pmf_p2(1) == Rational(5, 8));
  CHECK(pmf_p2(2) == Rational(1, 8));
  CHECK(pmf_p2(3) == Rational(5, 32));
  CHECK_THROWS_AS(pmf_p1(0), InputError);
  CHECK(partial_mass(p1_language(), 2) == Rational(3, 4));
}

TEST_CASE("tails at 60 are exactly 2^-60") {
  Rational tail = Rational(1) / (Rational(boost::multiprecision::cpp_int(1) << 60));
  CHECK(1 - partial_mass(p1_language(), 60) == tail);
  CHECK(1 - partial_mass(p2_language(), 60) == tail);
}

TEST_CASE("tail envelope at every truncation") {
  for (std::size_t n = 1; n <= 60; ++n) {
    Rational bound = Rational(4) / Rational(boost::multiprecision::cpp_int(1) << n);
    CHECK(1 - partial_mass(p1_language(), n) <= bound);
    CHECK(1 - partial_mass(p2_language(), n) <= bound);
  }
}

TEST_CASE("log mass agrees with the exact value") {
  auto p = Pmf::alternating(1);
  for (int n : {1, 2, 7, 30, 59}) {
    std::string s(static_cast<std::size_t>(n), 'x');
    CHECK(p.log_mass(s) == doctest::Approx(std::log(p.mass_double(s))).epsilon(1e-12));
  }
  CHECK(std::isinf(p.log_mass("")));
}

TEST_CASE("golden KL divergences") {
  CHECK(kl_truncated(p1_language(), p2_language(), 60) == doctest::Approx(0.29389333245106).epsilon(1e-9));
  CHECK(kl_truncated(p2_language(), p1_language(), 60) == doctest::Approx(0.242585971693641).epsilon(1e-9));
}

TEST_CASE("support equality and a finite-support mismatch") {
  CHECK(support_equal_up_to(p1_language(), p2_language(), 60).equal);
  auto emb = embed_deterministic(Language::unary_threshold(3), 10, "L3");
  auto cmp = support_equal_up_to(p1_language(), emb, 10);
  CHECK_FALSE(cmp.equal);
  CHECK(cmp.first_difference == std::string("xxxx"));
  CHECK(partial_mass(emb, 10) == 1);
}

TEST_CASE("sampling is deterministic under a seed") {
  auto a = sample(p1_language(), 42, 100);
  auto b = sample(p1_language(), 42, 100);
  CHECK(a == b);
  CHECK(sample(p1_language(), 43, 100) != a);
  std::size_t short_ones = 0;
  for (const auto& s : sample(p1_language(), 5, 20000)) short_ones += s.size() <= 2;
  CHECK(static_cast<double>(short_ones) / 20000 == doctest::Approx(0.75).epsilon(0.03));
}

TEST_CASE("likelihood ratio per sample") {
  CHECK(log_likelihood_ratio({"xx"}, p1_language(), p2_language()) == doctest::Approx(std::log(3.0)));
  CHECK(log_likelihood_ratio({"x"}, p1_language(), p2_language()) == doctest::Approx(std::log(3.0 / 5.0)));
  CHECK(likelihood_ratio_classify({"xx"}, p1_language(), p2_language()) == 1);
  CHECK(likelihood_ratio_classify({"x"}, p1_language(), p2_language()) == 2);
}

TEST_CASE("accuracy grid and the 2 sigma monotonicity check") {
  auto v = verify_alternating_pair(60, 9, 300);
  CHECK(v.normalization_ok);
  CHECK(v.positivity_ok);
  CHECK(v.support.equal);
  CHECK(v.accuracy_ok);
  CHECK(v.monotone_ok);
  std::vector<AccuracyPoint> falling{{1, 100, 99}, {10, 100, 50}};
  CHECK_FALSE(nondecreasing_within_2sigma(falling));
  std::vector<AccuracyPoint> noisy{{1, 100, 90}, {10, 100, 88}};
  CHECK(nondecreasing_within_2sigma(noisy));
}

TEST_CASE("prob learner keeps both candidates on shared support") {
  auto learner = make_prob_learner({p1_language(), p2_language()});
  learner->observe("x");
  learner->observe("xxxx");
  auto d = learner->distribution();
  CHECK(d.weights == std::vector<double>{0.5, 0.5});
  CHECK(learner->hypothesis() == std::size_t{0});
}
