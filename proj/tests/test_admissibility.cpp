#include <cmath>

#include "doctest.h"
#include "hnls/admissibility.hpp"
#include "hnls/closedform.hpp"
#include "hnls/error.hpp"
#include "oracles.hpp"

using namespace hnls;

namespace {

PeriodicPair pair_of(const ExponentialTriple& tr) { return PeriodicPair::exponential(tr.alpha, tr.omega, tr.c); }

const PeriodicPair& family_d_11() {
  static const PeriodicPair p = PeriodicPair::exponential(1.0, 1.0, -std::sqrt(2.0));
  return p;
}

}  // namespace

TEST_CASE("A3 supremum") {
  const A3Result r = check_a3(family_d_11());
  CHECK(r.pass);
  CHECK(std::abs(r.sup - 1.0 / std::sqrt(2.0)) < 1e-7);
  CHECK(std::abs(r.argmax) < 1e-3);

  const A3Result z = check_a3(PeriodicPair::zero());
  CHECK(z.pass);
  CHECK(z.sup < 1e-9);

  // omega = 0 has no period; the closed form on R is used instead.
  const ExponentialTriple flat{1.0, 0.0, Complex(-1.0, 0.0)};
  const A3Result f = check_a3([&](double k) { return oracle::FamilyD{1.0, 0.0}.qb(k); }, 8.0, 201);
  CHECK(std::abs(f.sup - 1.0) < 1e-12);
  CHECK_FALSE(f.pass);
  CHECK(std::abs(qb_exponential(flat, 0.5) - oracle::FamilyD{1.0, 0.0}.qb(0.5)) < 1e-12);
}

TEST_CASE("poles of P^b for (1, 1, -sqrt 2)") {
  const auto scan = locate_poles(family_d_11(), 6);
  const oracle::FamilyD fd{1.0, 1.0};
  const Complex c = -1.0 / (2.0 * kI);
  int nonzero = 0;
  for (const auto& p : scan) {
    if (p.side == LatticeSide::Upper || p.side == LatticeSide::Lower)
      CHECK(p.k == Complex(0.0, (p.side == LatticeSide::Upper ? 1.0 : -1.0) * std::sqrt(p.n * 1.0) / 2.0));
    if (!p.nonzero) continue;
    ++nonzero;
    CHECK(p.n == 1);
    CHECK(p.side != LatticeSide::Real);
    const Complex k1 = fd.k1(), k2 = fd.k2();
    const Complex expect = p.side == LatticeSide::Upper ? c * (k1 + k2) / (2.0 * k1) : c * (k2 - k1) / (-2.0 * k1);
    CHECK(std::abs(p.residue - expect) < 1e-8);
  }
  CHECK(nonzero == 2);
  for (const auto& p : locate_poles(PeriodicPair::zero(), 4)) CHECK_FALSE(p.nonzero);
}

TEST_CASE("residue does not depend on the contour radius") {
  const auto& p = family_d_11();
  const Complex k1(0.0, 0.5);
  const double gap = (std::sqrt(2.0) - 1.0) / 2.0;
  const Complex r1 = pb_contour_residue(p, k1, 0.25 * gap, 64, 1e-11);
  const Complex r2 = pb_contour_residue(p, k1, 0.125 * gap, 64, 1e-11);
  CHECK(std::abs(r1 - r2) < 1e-9);
  // Off-lattice circles enclose nothing.
  CHECK(std::abs(pb_contour_residue(p, Complex(0.3, 0.8), 0.05, 64, 1e-11)) < 1e-10);
}

TEST_CASE("contour radius must leave the lattice gap") {
  CHECK_THROWS_AS(locate_poles(family_d_11(), 4, 1.0), Error);
  try {
    locate_poles(family_d_11(), 4, 1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ContourCrossesSingularity);
  }
}

TEST_CASE("finite pole check") {
  std::vector<PoleCandidate> scan;
  for (int n = 1; n <= 8; ++n) scan.push_back({Complex(0.0, std::sqrt(n) / 2.0), n, LatticeSide::Upper, {}, {}, 0.1, n == 1});
  auto r = check_finite_poles(scan, 8);
  CHECK(r.pass);
  CHECK(r.n0 == 1);
  for (auto& c : scan) c.nonzero = true;
  r = check_finite_poles(scan, 8);
  CHECK_FALSE(r.pass);
  CHECK(r.inconclusive);
  CHECK(check_finite_poles({}, 8).n0 == 0);
}

TEST_CASE("decay coefficient") {
  const DecayResult d = check_decay(family_d_11());
  CHECK(d.pass);
  CHECK(std::abs(d.expected - Complex(0.0, 0.5)) < 1e-15);
  CHECK(std::abs(d.coefficient - d.expected) < 0.005);
  CHECK(std::abs(d.remainder_ratio - 4.0) < 0.5);

  const DecayResult z = check_decay(PeriodicPair::zero());
  CHECK(z.pass);
  CHECK(std::abs(z.coefficient) < 1e-8);

  const DecayResult a = check_decay(PeriodicPair::exponential(0.7, 1.5, Complex(0.2, 0.4)));
  CHECK(std::abs(a.expected - (-0.7 / (2.0 * kI))) < 1e-15);
}

TEST_CASE("verdict examples") {
  const AdmissibilityReport ok = verdict(family_d_11());
  CHECK(ok.verdict == Verdict::Admissible);
  CHECK(ok.a3_pass);
  CHECK(ok.decay_pass);
  CHECK(ok.smoothness_pass);
  CHECK(ok.finite_poles_pass);
  CHECK(ok.n0 == 1);
  REQUIRE(ok.pole_candidates.size() == 2);

  const AdmissibilityReport c = verdict(pair_of(family_c_triple(1.0, -4.0)));
  CHECK(c.verdict == Verdict::Rejected);
  CHECK(c.reason == RejectReason::OddZeroOfG);

  const AdmissibilityReport plus = verdict(PeriodicPair::exponential(1.0, 1.0, std::sqrt(2.0)));
  CHECK(plus.verdict == Verdict::Rejected);
  CHECK(plus.reason == RejectReason::PoleOfQbUpper);

  const AdmissibilityReport zero = verdict(PeriodicPair::zero());
  CHECK(zero.verdict == Verdict::Admissible);
  CHECK(zero.n0 == 0);
  CHECK(zero.pole_candidates.empty());
}

TEST_CASE("numerical verdict agrees with the classification across families") {
  std::vector<ExponentialTriple> rejected{family_a_triple(1.0, -1.5, 1), family_c_triple(0.8, -3.0),
                                          family_d_triple(0.7, 1.3, 1), family_d_triple(1.2, -0.5, -1)};
  ExponentialTriple t;
  REQUIRE(family_be_triple(0.6, -0.6 * 0.6 * 6.0, 0.2, 1, t));
  rejected.push_back(t);
  REQUIRE(family_be_triple(0.6, -0.6 * 0.6 * 3.5, -0.05, -1, t));
  rejected.push_back(t);
  for (const auto& tr : rejected) {
    INFO("alpha=" << tr.alpha << " omega=" << tr.omega << " c=" << tr.c);
    CHECK(classify(tr).verdict == ClassVerdict::NotAdmissible);
    CHECK(verdict(pair_of(tr)).verdict == Verdict::Rejected);
  }
  for (const auto& [a, w] : {std::pair{0.8, 1.7}, std::pair{1.5, 0.9}}) {
    const auto tr = family_d_triple(a, w, -1);
    CHECK(classify(tr).verdict == ClassVerdict::EventuallyAdmissible);
    CHECK(verdict(pair_of(tr)).verdict == Verdict::Admissible);
  }
}

TEST_CASE("report JSON") {
  nlohmann::json j = verdict(family_d_11());
  CHECK(j["verdict"] == "admissible");
  CHECK(j["finite_poles"]["n0"] == 1);
  CHECK(j["poles"].size() == 2);
}
