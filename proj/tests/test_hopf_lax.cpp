// Copyright 2026 The kexlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kex/hopf_lax.hpp"
#include "kex/rng.hpp"

using namespace kex;

namespace {

HopfLaxField constant_field(const FluxFunction& flux, double rho, double span,
                            double dy = 1e-4) {
  HopfLaxParams p;
  p.dy = dy;
  return HopfLaxField::from_profile(ProfileSpec::constant(rho, -span, span), flux, p);
}

ProfileSpec random_profile(Rng& rng, double k_max) {
  std::vector<ProfileSpec::Piece> pieces;
  double x = -3.0;
  for (int j = 0; j < 5; ++j) {
    double w = 0.4 + rng.next_unit();
    pieces.push_back({x, x + w, k_max * rng.next_unit()});
    x += w;
  }
  pieces.push_back({x, 3.5, k_max * rng.next_unit()});
  return ProfileSpec{pieces};
}

}  // namespace

TEST_CASE("constant profiles solve to rho x - t f(rho)") {
  struct Case {
    FluxFunction flux;
    double rho;
  };
  Case cases[] = {{FluxFunction::simple_exclusion(), 0.5},
                  {FluxFunction::zero_range(), 1.0},
                  {FluxFunction::corner_k2(), 1.0}};
  for (const auto& c : cases) {
    HopfLaxField field = constant_field(c.flux, c.rho, 6.0);
    for (double x : {-1.0, -0.3, 0.0, 0.7}) {
      for (double t : {0.5, 1.0}) {
        double want = c.rho * x - t * c.flux(c.rho);
        CHECK(std::fabs(field.u(x, t) - want) < 1e-3);
      }
    }
  }
}

TEST_CASE("the full wedge solves to -t g(x/t)") {
  HopfLaxParams p;
  p.dy = 1e-4;
  FluxFunction flux = FluxFunction::simple_exclusion();
  ProfileSpec wedge{{{-6.0, 0.0, 1.0}, {0.0, 6.0, 0.0}}};
  HopfLaxField field = HopfLaxField::from_profile(wedge, flux, p);
  ConjugateG g = conjugate(flux);
  for (double x : {-0.8, -0.2, 0.0, 0.4, 0.9, 1.3}) {
    double t = 1.0;
    CHECK(std::fabs(field.u(x, t) - (-t * g(x / t))) < 1e-3);
  }
  // Corner flux wedge: rho = K on the left.
  FluxFunction corner = FluxFunction::corner_k2();
  ProfileSpec wedge2{{{-8.0, 0.0, 2.0}, {0.0, 8.0, 0.0}}};
  HopfLaxField field2 = HopfLaxField::from_profile(wedge2, corner, p);
  ConjugateG g2 = conjugate(corner);
  for (double x : {-1.5, -0.5, 0.3, 1.1}) {
    double t = 1.0;
    CHECK(std::fabs(field2.u(x, t) - (-t * g2(x / t))) < 1e-3);
  }
}

TEST_CASE("the semigroup composition is self-consistent") {
  Rng rng(2024);
  FluxFunction flux = FluxFunction::simple_exclusion();
  for (int rep = 0; rep < 3; ++rep) {
    ProfileSpec prof = random_profile(rng, 1.0);
    HopfLaxParams p;
    p.dy = 1e-4;
    HopfLaxField field = HopfLaxField::from_profile(prof, flux, p);
    double t = 1.0, s = 0.5;
    HopfLaxField slice = field.restarted(s, -2.5, 2.5);
    for (double x : {-0.8, 0.0, 0.6}) {
      CHECK(std::fabs(field.u(x, t) - slice.u(x, t - s)) < 2e-3);
    }
  }
}

TEST_CASE("u is monotone in x and t") {
  Rng rng(77);
  HopfLaxField field =
      HopfLaxField::from_profile(random_profile(rng, 1.0), FluxFunction::simple_exclusion(),
                                 HopfLaxParams{.dy = 1e-3});
  double prev = -1e300;
  for (double x = -1.0; x <= 1.0; x += 0.125) {
    double v = field.u(x, 0.7);
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
  for (double x : {-0.5, 0.25}) {
    double a = field.u(x, 0.3), b = field.u(x, 0.8), c = field.u(x, 1.4);
    CHECK(b <= a + 1e-9);
    CHECK(c <= b + 1e-9);
  }
}

TEST_CASE("corner flux maximizers form the stated plateau") {
  FluxFunction corner = FluxFunction::corner_k2();
  HopfLaxField field = constant_field(corner, 1.0, 8.0);
  for (double x : {-0.4, 0.0, 0.9}) {
    Maximizers m = field.maximizers(x, 0.0, 1.0);
    CHECK(std::fabs(m.y_minus - (x - 1.0)) < 1e-4);
    CHECK(std::fabs(m.y_plus - (x + 1.0)) < 1e-4);
  }
  // Restarted: y(+-)(x; s, t) = x -+ (t - s).
  Maximizers m = field.maximizers(0.2, 0.5, 1.0);
  CHECK(std::fabs(m.y_minus - (0.2 - 0.5)) < 1e-4);
  CHECK(std::fabs(m.y_plus - (0.2 + 0.5)) < 1e-4);
}

TEST_CASE("strictly concave flux pins the maximizer at the characteristic foot") {
  HopfLaxField field = constant_field(FluxFunction::simple_exclusion(), 0.5, 6.0);
  for (double x : {-0.5, 0.0, 0.8}) {
    Maximizers m = field.maximizers(x, 0.0, 1.0);
    CHECK(std::fabs(m.y_minus - x) < 1e-3);  // f'(0.5) = 0
    CHECK(std::fabs(m.y_plus - x) < 1e-3);
  }
}

TEST_CASE("maximizers are monotone when the conjugate is strictly convex") {
  Rng rng(31);
  FluxFunction flux = FluxFunction::simple_exclusion();
  for (int rep = 0; rep < 3; ++rep) {
    HopfLaxField field = HopfLaxField::from_profile(random_profile(rng, 1.0), flux,
                                                    HopfLaxParams{.dy = 5e-4});
    double prev_plus = -1e300;
    for (double x = -1.0; x <= 1.0; x += 0.2) {
      Maximizers m = field.maximizers(x, 0.0, 0.9);
      CHECK(m.y_minus >= prev_plus - 5e-3);  // y+(x1) <= y-(x2) up to grid noise
      prev_plus = m.y_plus;
    }
  }
}

TEST_CASE("characteristics of the rarefaction fan open at the stated rays") {
  FluxFunction flux = FluxFunction::simple_exclusion();
  ProfileSpec prof = ProfileSpec::riemann(0.8, 0.2, 4.0);
  HopfLaxField field = HopfLaxField::from_profile(prof, flux, HopfLaxParams{.dy = 1e-4});
  for (double t : {0.5, 1.0}) {
    CharPair ch = field.characteristics(0.0, 0.0, t);
    CHECK(std::fabs(ch.x_minus - (1.0 - 2.0 * 0.8) * t) < 2e-3);
    CHECK(std::fabs(ch.x_plus - (1.0 - 2.0 * 0.2) * t) < 2e-3);
  }
}

TEST_CASE("an admissible shock carries a single characteristic") {
  FluxFunction flux = FluxFunction::simple_exclusion();
  // f(0.2) = f(0.8): the shock stands still.
  ProfileSpec prof = ProfileSpec::riemann(0.2, 0.8, 4.0);
  HopfLaxField field = HopfLaxField::from_profile(prof, flux, HopfLaxParams{.dy = 1e-4});
  CharPair ch = field.characteristics(0.0, 0.0, 1.0);
  CHECK(std::fabs(ch.x_minus) < 1e-4);
  CHECK(std::fabs(ch.x_plus) < 1e-4);
  // Moving shock: alpha = 0.1, beta = 0.5 -> speed 0.4.
  ProfileSpec prof2 = ProfileSpec::riemann(0.1, 0.5, 4.0);
  HopfLaxField field2 = HopfLaxField::from_profile(prof2, flux, HopfLaxParams{.dy = 1e-4});
  CharPair ch2 = field2.characteristics(0.0, 0.0, 1.0);
  CHECK(std::fabs(ch2.x_minus - 0.4) < 2e-3);
  CHECK(std::fabs(ch2.x_plus - 0.4) < 2e-3);
}

TEST_CASE("corner flux characteristics spread ballistically") {
  FluxFunction corner = FluxFunction::corner_k2();
  HopfLaxField field = constant_field(corner, 1.0, 8.0);
  for (double b : {-0.5, 0.0, 0.7}) {
    CharPair ch = field.characteristics(b, 0.0, 1.0);
    CHECK(std::fabs(ch.x_minus - (b - 1.0)) < 1e-4);
    CHECK(std::fabs(ch.x_plus - (b + 1.0)) < 1e-4);
    CharPair chs = field.characteristics(b, 0.5, 1.0);
    CHECK(std::fabs(chs.x_minus - (b - 0.5)) < 1e-4);
    CHECK(std::fabs(chs.x_plus - (b + 0.5)) < 1e-4);
  }
}

TEST_CASE("characteristics from a positive time collapse to a point") {
  Rng rng(55);
  FluxFunction flux = FluxFunction::simple_exclusion();
  for (int rep = 0; rep < 2; ++rep) {
    HopfLaxField field = HopfLaxField::from_profile(random_profile(rng, 1.0), flux,
                                                    HopfLaxParams{.dy = 1e-4});
    for (double b : {-0.4, 0.3}) {
      CharPair ch = field.characteristics(b, 0.5, 1.0);
      CHECK(std::fabs(ch.x_plus - ch.x_minus) < 5e-4);
    }
  }
}

TEST_CASE("densities: smooth case agrees three ways") {
  HopfLaxField field = constant_field(FluxFunction::simple_exclusion(), 0.5, 6.0);
  DensityTriple d = field.density(0.2, 1.0);
  REQUIRE(d.rho_minus.has_value());
  REQUIRE(d.rho_plus.has_value());
  CHECK(std::fabs(*d.rho_minus - 0.5) < 1e-3);
  CHECK(std::fabs(*d.rho_plus - 0.5) < 1e-3);
  CHECK(std::fabs(d.rho_numeric - 0.5) < 1e-3);
}

TEST_CASE("densities: rarefaction interior follows the inverse slope") {
  FluxFunction flux = FluxFunction::simple_exclusion();
  ProfileSpec prof = ProfileSpec::riemann(0.8, 0.2, 4.0);
  HopfLaxField field = HopfLaxField::from_profile(prof, flux, HopfLaxParams{.dy = 1e-4});
  for (double v : {-0.4, 0.0, 0.3}) {
    DensityTriple d = field.density(v * 1.0, 1.0);
    double want = (1.0 - v) / 2.0;  // invert f'(rho) = 1 - 2 rho
    CHECK(std::fabs(d.rho_numeric - want) < 1e-3);
    REQUIRE(d.rho_minus.has_value());
    CHECK(std::fabs(*d.rho_minus - want) < 1e-3);
  }
}

TEST_CASE("densities: the corner leaves the one-sided forms undefined") {
  FluxFunction corner = FluxFunction::corner_k2();
  HopfLaxField field = constant_field(corner, 1.0, 8.0);
  DensityTriple d = field.density(0.1, 1.0);
  CHECK_FALSE(d.rho_minus.has_value());
  CHECK_FALSE(d.rho_plus.has_value());
  CHECK(std::fabs(d.rho_numeric - 1.0) < 1e-3);
}

TEST_CASE("defined one-sided densities always jump upward") {
  Rng rng(4711);
  FluxFunction flux = FluxFunction::simple_exclusion();
  for (int rep = 0; rep < 3; ++rep) {
    HopfLaxField field = HopfLaxField::from_profile(random_profile(rng, 1.0), flux,
                                                    HopfLaxParams{.dy = 5e-4});
    for (double x = -1.0; x <= 1.0; x += 0.25) {
      DensityTriple d = field.density(x, 0.8);
      if (d.rho_minus && d.rho_plus) CHECK(*d.rho_minus <= *d.rho_plus + 1e-6);
    }
  }
}

TEST_CASE("one-sided difference quotients sit between the conjugate slopes") {
  Rng rng(912);
  FluxFunction flux = FluxFunction::simple_exclusion();
  ConjugateG g = conjugate(flux);
  HopfLaxField field = HopfLaxField::from_profile(random_profile(rng, 1.0), flux,
                                                  HopfLaxParams{.dy = 1e-4});
  double t = 1.0, eps = 1e-3, slack = 5e-3;
  for (double x : {-0.6, 0.1, 0.8}) {
    Maximizers m = field.maximizers(x, 0.0, t);
    double left_quot = (field.u(x, t) - field.u(x - eps, t)) / eps;
    SlopePair sm = g.one_sided((x - m.y_minus) / t);
    CHECK(left_quot >= -*sm.right - slack);
    CHECK(left_quot <= -*sm.left + slack);
    double right_quot = (field.u(x + eps, t) - field.u(x, t)) / eps;
    SlopePair sp = g.one_sided((x - m.y_plus) / t);
    CHECK(right_quot >= -*sp.right - slack);
    CHECK(right_quot <= -*sp.left + slack);
  }
}

TEST_CASE("the current comparator ranks candidate solutions") {
  FluxFunction flux = FluxFunction::simple_exclusion();
  ProfileSpec prof = ProfileSpec::riemann(0.8, 0.2, 4.0);
  HopfLaxField field = HopfLaxField::from_profile(prof, flux, HopfLaxParams{.dy = 1e-4});
  double t = 1.0;

  // Non-entropic standing shock: current f(0.8) * t = 0.16 t.
  std::vector<std::pair<double, double>> shock;
  for (int i = 0; i <= 100; ++i) shock.emplace_back(t * i / 100.0, 0.8);
  CurrentComparison c = current_compare(flux, field, shock, 0.0, t, 1e-3);
  CHECK(c.candidate_current == doctest::Approx(0.16 * t).epsilon(1e-6));
  CHECK(c.chosen_current == doctest::Approx(0.25 * t).epsilon(1e-2));
  CHECK(c.verdict == CurrentVerdict::candidate_below);

  // The solution itself: equality within tolerance.
  std::vector<std::pair<double, double>> self;
  self.emplace_back(0.0, 0.5);
  for (int i = 1; i <= 100; ++i) {
    double s = t * i / 100.0;
    self.emplace_back(s, field.density(0.0, s).rho_numeric);
  }
  CurrentComparison ceq = current_compare(flux, field, self, 0.0, t, 5e-3);
  CHECK(ceq.verdict == CurrentVerdict::equal_within_tol);

  // Admissible shock data: the jump is the solution; equality again.
  ProfileSpec prof2 = ProfileSpec::riemann(0.2, 0.8, 4.0);
  HopfLaxField field2 = HopfLaxField::from_profile(prof2, flux, HopfLaxParams{.dy = 1e-4});
  std::vector<std::pair<double, double>> jump;
  for (int i = 0; i <= 100; ++i) jump.emplace_back(t * i / 100.0, 0.8);
  CurrentComparison cad = current_compare(flux, field2, jump, 0.0, t, 5e-3);
  CHECK(cad.candidate_current == doctest::Approx(0.16 * t).epsilon(1e-6));
  CHECK(cad.verdict == CurrentVerdict::equal_within_tol);
}

TEST_CASE("degenerate queries are rejected") {
  HopfLaxField field = constant_field(FluxFunction::simple_exclusion(), 0.5, 2.0, 1e-3);
  CHECK(field.u(0.3, 0.0) == doctest::Approx(0.15));
  CHECK_THROWS_AS(field.maximizers(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(field.u(0.0, -1.0), std::invalid_argument);
}
