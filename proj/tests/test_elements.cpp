#include <doctest.h>

#include <random>

#include "occt/elements.hpp"

using namespace occt;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Mode sm(int path, Pol pol) { return Mode{ModeKind::Source, path, pol}; }
Mode om(int path, Pol pol) { return Mode{ModeKind::Output, path, pol}; }

PolyState one_photon(Mode m) { return PolyState::single(Monomial{{m}}, 1.0); }

double state_diff(const PolyState& a, const PolyState& b) {
  double worst = 0.0;
  for (const auto& [m, c] : a.terms())
    worst = std::max(worst, std::abs(c - b.coefficient(m)));
  for (const auto& [m, c] : b.terms())
    worst = std::max(worst, std::abs(c - a.coefficient(m)));
  return worst;
}

PolyState random_photons(std::mt19937_64& rng, const std::vector<int>& paths) {
  std::uniform_int_distribution<int> nphotons(1, 3);
  std::uniform_int_distribution<int> pick(0,
                                          static_cast<int>(paths.size()) - 1);
  std::uniform_int_distribution<int> polbit(0, 1);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  PolyState p;
  for (int t = 0; t < 4; ++t) {
    std::vector<Mode> modes;
    int d = nphotons(rng);
    for (int k = 0; k < d; ++k)
      modes.push_back(sm(paths[pick(rng)], polbit(rng) ? Pol::V : Pol::H));
    p.accumulate(Monomial{std::move(modes)}, {amp(rng), amp(rng)});
  }
  return normalize_fock(p);
}

}  // namespace

TEST_CASE("pbs routes by polarization") {
  Element pbs = make_pbs(1, 2, 7, 8);
  PolyState t = apply(pbs, one_photon(sm(1, Pol::H)));
  REQUIRE(t.term_count() == 1);
  CHECK(std::abs(t.coefficient(Monomial{{om(7, Pol::H)}}) - Complex{1.0}) <
        1e-12);

  PolyState r = apply(pbs, one_photon(sm(1, Pol::V)));
  CHECK(std::abs(r.coefficient(Monomial{{om(8, Pol::V)}}) - Complex{1.0}) <
        1e-12);

  PolyState cross = apply(pbs, one_photon(sm(2, Pol::H)));
  CHECK(std::abs(cross.coefficient(Monomial{{om(8, Pol::H)}}) - Complex{1.0}) <
        1e-12);
  PolyState cross_v = apply(pbs, one_photon(sm(2, Pol::V)));
  CHECK(std::abs(cross_v.coefficient(Monomial{{om(7, Pol::V)}}) -
                 Complex{1.0}) < 1e-12);

  // A two-photon product splits across the two outputs.
  PolyState hv = apply(
      pbs, PolyState::single(Monomial{{sm(1, Pol::H), sm(1, Pol::V)}}, 1.0));
  REQUIRE(hv.term_count() == 1);
  CHECK(std::abs(hv.coefficient(Monomial{{om(7, Pol::H), om(8, Pol::V)}}) -
                 Complex{1.0}) < 1e-12);

  CHECK(check_unitary(pbs).unitary);
  CHECK(check_unitary(pbs).max_deviation < 1e-12);
  CHECK_FALSE(pbs.lossy);
}

TEST_CASE("pbs rejects duplicate paths") {
  CHECK_THROWS_AS(make_pbs(1, 1, 7, 8), ConfigError);
  CHECK_THROWS_AS(make_pbs(1, 2, 7, 7), ConfigError);
  CHECK_THROWS_AS(make_bs(3, 4, 4, 9), ConfigError);
}

TEST_CASE("pbs reflection phase is configurable") {
  Element pbs = make_pbs(1, 2, 7, 8, Complex{0.0, 1.0});
  CHECK(check_unitary(pbs).unitary);
  PolyState r = apply(pbs, one_photon(sm(1, Pol::V)));
  CHECK(std::abs(r.coefficient(Monomial{{om(8, Pol::V)}}) -
                 Complex{0.0, 1.0}) < 1e-12);
}

TEST_CASE("bs is a real-convention 50/50 splitter") {
  Element bs = make_bs(1, 2, 7, 8);
  PolyState a = apply(bs, one_photon(sm(1, Pol::H)));
  CHECK(std::abs(a.coefficient(Monomial{{om(7, Pol::H)}}) -
                 Complex{kInvSqrt2}) < 1e-12);
  CHECK(std::abs(a.coefficient(Monomial{{om(8, Pol::H)}}) -
                 Complex{kInvSqrt2}) < 1e-12);

  // Relative minus sign on the second-input branch.
  PolyState b = apply(bs, one_photon(sm(2, Pol::V)));
  CHECK(std::abs(b.coefficient(Monomial{{om(7, Pol::V)}}) -
                 Complex{kInvSqrt2}) < 1e-12);
  CHECK(std::abs(b.coefficient(Monomial{{om(8, Pol::V)}}) +
                 Complex{kInvSqrt2}) < 1e-12);

  CHECK(check_unitary(bs).unitary);

  // Hong–Ou–Mandel through the element engine.
  PolyState hom = apply(
      bs, PolyState::single(Monomial{{sm(1, Pol::H), sm(2, Pol::H)}}, 1.0));
  CHECK(std::abs(hom.coefficient(Monomial{{om(7, Pol::H), om(8, Pol::H)}})) <
        1e-12);
  CHECK(fock_norm_sq(hom) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("bs imaginary convention is unitary and also bunches") {
  Element bs = make_bs(1, 2, 7, 8, BsConvention::Imag);
  CHECK(check_unitary(bs).unitary);
  PolyState hom = apply(
      bs, PolyState::single(Monomial{{sm(1, Pol::H), sm(2, Pol::H)}}, 1.0));
  CHECK(std::abs(hom.coefficient(Monomial{{om(7, Pol::H), om(8, Pol::H)}})) <
        1e-12);
}

TEST_CASE("wave plates") {
  Element x = make_x_plate(4);
  PolyState flipped = apply(x, one_photon(sm(4, Pol::H)));
  CHECK(std::abs(flipped.coefficient(Monomial{{om(4, Pol::V)}}) -
                 Complex{1.0}) < 1e-12);

  // Involutions restore the input.
  PolyState back = apply(x, flipped);
  CHECK(std::abs(back.coefficient(Monomial{{om(4, Pol::H)}}) - Complex{1.0}) <
        1e-12);

  Element h = make_hadamard_plate(4);
  PolyState hv = apply(h, one_photon(sm(4, Pol::V)));
  CHECK(std::abs(hv.coefficient(Monomial{{om(4, Pol::H)}}) -
                 Complex{kInvSqrt2}) < 1e-12);
  CHECK(std::abs(hv.coefficient(Monomial{{om(4, Pol::V)}}) +
                 Complex{kInvSqrt2}) < 1e-12);
  PolyState twice = apply(h, hv);
  CHECK(std::abs(twice.coefficient(Monomial{{om(4, Pol::V)}}) - Complex{1.0}) <
        1e-12);
  CHECK(twice.term_count() == 1);

  Element ph = make_phase(4, 0.7);
  PolyState rotated = apply(ph, one_photon(sm(4, Pol::H)));
  CHECK(std::abs(rotated.coefficient(Monomial{{om(4, Pol::H)}}) -
                 std::polar(1.0, 0.7)) < 1e-12);

  for (const Element* e : {&x, &h, &ph}) {
    CHECK(check_unitary(*e).unitary);
    CHECK_FALSE(e->lossy);
  }
}

TEST_CASE("trap absorbs into discard modes") {
  Element trap = make_trap(3);
  CHECK(trap.lossy);
  PolyState t = apply(trap, one_photon(sm(3, Pol::V)));
  REQUIRE(t.term_count() == 1);
  const Monomial& m = t.terms().begin()->first;
  CHECK(m.contains_kind(ModeKind::Discard));

  // No photon at the trapped path: state unchanged.
  PolyState other = one_photon(sm(5, Pol::H));
  CHECK(state_diff(apply(trap, other), other) < 1e-14);

  // Nothing may consume a discard mode.
  Element x = make_x_plate(3);
  CHECK_THROWS_AS(apply(x, t), ConfigError);
}

TEST_CASE("fig6gate survival weights") {
  Element g = make_fig6_gate(2, 32, 42);
  CHECK(g.lossy);

  auto survival = [](const PolyState& s) {
    double w = 0.0;
    for (const auto& [m, c] : s.terms())
      if (!m.contains_kind(ModeKind::Discard)) w += std::norm(c);
    return w;
  };

  PolyState h_in = apply(g, one_photon(sm(2, Pol::H)));
  CHECK(survival(h_in) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(h_in.coefficient(Monomial{{om(32, Pol::H)}}) - Complex{0.5}) <
        1e-12);
  CHECK(std::abs(h_in.coefficient(Monomial{{om(42, Pol::V)}}) - Complex{0.5}) <
        1e-12);
  CHECK(fock_norm_sq(h_in) == doctest::Approx(1.0).epsilon(1e-12));

  PolyState v_in = apply(g, one_photon(sm(2, Pol::V)));
  CHECK(survival(v_in) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(v_in.coefficient(Monomial{{om(32, Pol::H)}}) - Complex{0.5}) <
        1e-12);

  // Vacuum input passes through untouched.
  PolyState vac = PolyState::vacuum();
  CHECK(state_diff(apply(g, vac), vac) < 1e-14);

  // The composite gate is not an isometry and is reported as such.
  CHECK_FALSE(check_unitary(g).unitary);
  CHECK(check_unitary(g).max_deviation > 0.1);
}

TEST_CASE("identity element leaves any state unchanged") {
  Element id;  // no rules
  id.name = "identity";
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    PolyState s = random_photons(rng, {1, 2, 3});
    CHECK(state_diff(apply(id, s), s) < 1e-14);
  }
}

TEST_CASE("non-lossy elements preserve the physical norm") {
  std::mt19937_64 rng(9);
  std::vector<Element> elems = {make_pbs(1, 2, 7, 8), make_bs(1, 2, 7, 8),
                                make_x_plate(1), make_hadamard_plate(2),
                                make_phase(3, 1.1)};
  for (const Element& e : elems) {
    for (int t = 0; t < 20; ++t) {
      PolyState s = random_photons(rng, {1, 2, 3});
      CHECK(fock_norm_sq(apply(e, s)) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("apply is linear") {
  std::mt19937_64 rng(13);
  Element bs = make_bs(1, 2, 7, 8);
  for (int t = 0; t < 20; ++t) {
    PolyState a = random_photons(rng, {1, 2, 3});
    PolyState b = random_photons(rng, {1, 2, 3});
    PolyState lhs = apply(bs, poly_add(a, b));
    PolyState rhs = poly_add(apply(bs, a), apply(bs, b));
    CHECK(state_diff(lhs, rhs) < 1e-10);
  }
}
