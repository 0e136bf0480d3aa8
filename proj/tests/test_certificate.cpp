#include <gtest/gtest.h>

#include "nefcert/certificate.hpp"

using namespace nefcert;

namespace {

const Certificate& cert3() {
  static const Certificate c = [] {
    BuildResult r = certificate_build(3, 7);
    if (!r.cert) throw Error("search failed: " + r.report.reason);
    return *r.cert;
  }();
  return c;
}

Certificate reparse(const Certificate& c) { return certificate_from_json(certificate_to_json(c)); }

}  // namespace

TEST(Certificate, MinimalDegree) {
  EXPECT_EQ(minimal_degree(3), 3);
  EXPECT_EQ(minimal_degree(5), 2);
  EXPECT_EQ(minimal_degree(7), 2);
  EXPECT_EQ(minimal_degree(17), 1);
}

TEST(Certificate, BuildVerifiesAndRoundTrips) {
  const Certificate& c = cert3();
  VerifyReport r = certificate_verify(c);
  EXPECT_TRUE(r.ok()) << report_to_text(r);
  ASSERT_EQ(r.checks.size(), 7u);
  std::string text = certificate_to_json(c);
  Certificate back = certificate_from_json(text);
  EXPECT_EQ(certificate_to_json(back), text);
  EXPECT_TRUE(certificate_verify(back).ok());
  EXPECT_FALSE(c.obstruction.is_zero());
  EXPECT_TRUE(twelve_distinct_rational(c.d));
}

TEST(Certificate, DeterministicInSeed) {
  BuildResult a = certificate_build(3, 7);
  ASSERT_TRUE(a.cert.has_value());
  EXPECT_EQ(certificate_to_json(*a.cert), certificate_to_json(cert3()));
}

TEST(Certificate, TamperedGammaFailsTrivializationCheck) {
  Certificate c = reparse(cert3());
  c.gamma = Differential(FunctionElement::constant(c.curve, c.curve.field()->zero()));
  VerifyReport r = certificate_verify(c);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.first_failure(), 3);
  Certificate d = reparse(cert3());
  d.gamma = d.gamma * d.curve.field()->from_int(2);
  EXPECT_EQ(certificate_verify(d).first_failure(), 3);
}

TEST(Certificate, TamperedTrivializationFailsCheck3) {
  Certificate c = reparse(cert3());
  const FiniteField* f = c.curve.field();
  c.g = c.g * (FunctionElement::x(c.curve) - FunctionElement::constant(c.curve, f->one()));
  EXPECT_EQ(certificate_verify(c).first_failure(), 3);
}

TEST(Certificate, DeltaWithVanishingObstructionFailsCheck4) {
  Certificate c = reparse(cert3());
  const Curve& cv = c.curve;
  Divisor rep = mumford_divisor(cv, c.torsion);
  EmbeddingData e = embed_bidegree_2_3(cv, c.a_div);
  NormalBundle n = normal_bundle_divisor(e, c.aux);
  BetaFunctional beta = beta_functional(e, n);
  RRSpace s = rr_space(cv, c.n_div - rep);
  Vec vals;
  for (const auto& b : s.basis) vals.push_back(obstruction_scalar(beta, b, c.gamma, c.alpha));
  size_t i = 0;
  while (vals[i].is_zero()) ++i;
  size_t j = i == 0 ? 1 : 0;
  Vec w(s.dim(), cv.field()->zero());
  w[i] = vals[j];
  w[j] = -vals[i];
  if (w[i].is_zero() && w[j].is_zero()) w[j] = cv.field()->one();
  ASSERT_TRUE(obstruction_scalar(beta, s.combine(w), c.gamma, c.alpha).is_zero());
  c.delta_coords = w;
  VerifyReport r = certificate_verify(c);
  EXPECT_EQ(r.first_failure(), 4);
  // keeping D consistent still fails on the scalar itself
  c.d = divisor_of_function(s.combine(w)) + c.n_div - rep;
  c.obstruction = cv.field()->zero();
  r = certificate_verify(c);
  EXPECT_FALSE(r.checks[3].passed);
  EXPECT_EQ(r.checks[3].detail, "obstruction vanishes");
}

TEST(Certificate, TamperedPointsFailClassCheck) {
  Certificate c = reparse(cert3());
  Place drop = c.d.entries().begin()->first;
  for (const auto& p : c.curve.rational_places())
    if (c.d[p] == 0) {
      c.d.add(drop, -1);
      c.d.add(p, 1);
      break;
    }
  VerifyReport r = certificate_verify(c);
  EXPECT_EQ(r.first_failure(), 2);
  // doubling a point: not reduced
  Certificate d = reparse(cert3());
  auto it = d.d.entries().begin();
  Place a = it->first, b = std::next(it)->first;
  d.d.add(a, 1);
  d.d.add(b, -1);
  VerifyReport rd = certificate_verify(d);
  EXPECT_FALSE(rd.ok());
  EXPECT_FALSE(rd.checks[6].passed);
}

TEST(Certificate, MalformedInputRejected) {
  EXPECT_THROW(certificate_from_json("not json"), ParseError);
  EXPECT_THROW(certificate_from_json("{}"), ParseError);
  std::string text = certificate_to_json(cert3());
  auto pos = text.find("\"gamma\"");
  ASSERT_NE(pos, std::string::npos);
  std::string cut = text.substr(0, pos) + "\"gamma\": 5}";
  EXPECT_THROW(certificate_from_json(cut), ParseError);
  std::string bad_schema = text;
  bad_schema.replace(bad_schema.find("nefcert-certificate/1"), 21, "nefcert-certificate/9");
  EXPECT_THROW(certificate_from_json(bad_schema), ParseError);
}

TEST(Certificate, FiveSucceeds) {
  BuildResult r = certificate_build(5, 11);
  ASSERT_TRUE(r.cert.has_value()) << r.report.reason;
  EXPECT_TRUE(certificate_verify(*r.cert).ok());
}

TEST(Certificate, TinyBudgetReportsFailure) {
  BuildBudget b;
  b.curves_per_field = 2;
  b.field_steps = 0;
  BuildResult r = certificate_build(3, 1, b);
  if (!r.cert) {
    EXPECT_EQ(r.report.reason, "budget exhausted");
    EXPECT_EQ(r.report.stats.at("curves"), 2);
    EXPECT_FALSE(failure_to_json(r.report, 3, 1).empty());
  }
  EXPECT_THROW(certificate_build(9, 1), Error);
  EXPECT_THROW(certificate_build(2, 1), Error);
}
