#include <doctest.h>

#include <random>

#include "occt/qutrit.hpp"

using namespace occt;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Mode om(int path, Pol pol) { return Mode{ModeKind::Output, path, pol}; }

// Six-photon monomial over paths 1..6 from a polarization word.
Monomial word6(const std::string& w) {
  std::vector<Mode> modes;
  for (int k = 0; k < 6; ++k)
    modes.push_back(om(k + 1, w[k] == 'H' ? Pol::H : Pol::V));
  return Monomial{modes};
}

}  // namespace

TEST_CASE("basis indexing is big-endian ternary") {
  CHECK(QutritState::index_of({0, 1, 1}) == 4);
  CHECK(QutritState::index_of({1, 0, 1}) == 10);
  CHECK(QutritState::index_of({2, 1, 0}) == 21);
  CHECK_THROWS_AS(QutritState::index_of({3}), std::invalid_argument);
}

TEST_CASE("logical states") {
  QutritState zero = logical_zero();
  int support = 0;
  for (int i = 0; i < 27; ++i)
    if (std::abs(zero.amp(i)) > 0) ++support;
  CHECK(support == 2);
  CHECK(zero.amp(4).real() == doctest::Approx(kInvSqrt2));
  CHECK(zero.amp(10).real() == doctest::Approx(-kInvSqrt2));

  QutritState one = logical_one();
  CHECK(one.amp(QutritState::index_of({0, 2, 1})).real() ==
        doctest::Approx(-0.5));
  CHECK(one.amp(QutritState::index_of({1, 2, 0})).real() ==
        doctest::Approx(0.5));
  CHECK(one.amp(QutritState::index_of({2, 0, 1})).real() ==
        doctest::Approx(-0.5));
  CHECK(one.amp(QutritState::index_of({2, 1, 0})).real() ==
        doctest::Approx(0.5));

  // Disjoint supports.
  CHECK(fidelity(zero, one) == doctest::Approx(0.0));
  CHECK(zero.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("encode_logical") {
  bool was_unit = false;
  QutritState z = encode_logical(1.0, 0.0, &was_unit);
  CHECK(was_unit);
  CHECK(phase_invariant_equal(z, logical_zero(), 1e-12));

  // Non-normalized input is normalized and flagged.
  QutritState s = encode_logical(2.0, 2.0, &was_unit);
  CHECK_FALSE(was_unit);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Complex a{u(rng), u(rng)}, b{u(rng), u(rng)};
    double n = std::sqrt(std::norm(a) + std::norm(b));
    QutritState psi = encode_logical(a / n, b / n);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("singlet3 signs follow permutation parity and swaps negate it") {
  QutritState s = singlet3();
  const double w = 1.0 / std::sqrt(6.0);
  CHECK(s.amp(QutritState::index_of({0, 1, 2})).real() == doctest::Approx(w));
  CHECK(s.amp(QutritState::index_of({1, 2, 0})).real() == doctest::Approx(w));
  CHECK(s.amp(QutritState::index_of({2, 0, 1})).real() == doctest::Approx(w));
  CHECK(s.amp(QutritState::index_of({1, 0, 2})).real() == doctest::Approx(-w));
  CHECK(s.amp(QutritState::index_of({0, 2, 1})).real() == doctest::Approx(-w));
  CHECK(s.amp(QutritState::index_of({2, 1, 0})).real() == doctest::Approx(-w));

  // Explicit swap of factors (a, b): amplitudes permute; the result must
  // equal −singlet3 for every transposition.
  auto swapped = [&](int a, int b) {
    Eigen::VectorXcd v(27);
    for (int i = 0; i < 27; ++i) {
      int d[3] = {i / 9, (i / 3) % 3, i % 3};
      std::swap(d[a], d[b]);
      v(9 * d[0] + 3 * d[1] + d[2]) = s.amp(i);
    }
    return QutritState(3, v);
  };
  for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    QutritState t = swapped(a, b);
    CHECK((t.amps() + s.amps()).norm() < 1e-12);
  }
}

TEST_CASE("maxent2 single-qutrit populations are 1/3") {
  QutritState m = maxent2();
  for (int which = 0; which < 2; ++which) {
    for (int level = 0; level < 3; ++level) {
      double pop = 0.0;
      for (int i = 0; i < 9; ++i) {
        int digit = which == 0 ? i / 3 : i % 3;
        if (digit == level) pop += std::norm(m.amp(i));
      }
      CHECK(pop == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("decode maps pair polarizations to qutrit digits") {
  // (V1V2 V3H4 V5H6 − V1H2 V3V4 V5H6)/√2 → (|011⟩ − |101⟩)/√2
  PolyState s;
  s.accumulate(word6("VVVHVH"), kInvSqrt2);
  s.accumulate(word6("VHVVVH"), -kInvSqrt2);
  QutritState q = decode(s, PairEncoding{});
  CHECK(phase_invariant_equal(q, logical_zero(), 1e-12));

  // The image never has support outside digits {0,1,2} by construction;
  // decoding is linear before normalization.
  PolyState t;
  t.accumulate(word6("VVVVVV"), 1.0);
  QutritState qt = decode(t, PairEncoding{});
  CHECK(std::abs(qt.amp(QutritState::index_of({0, 0, 0})) - Complex{1.0}) <
        1e-12);

  PolyState mix = poly_add(poly_scale(s, 0.6), poly_scale(t, 0.8));
  QutritState qm = decode(mix, PairEncoding{});
  Eigen::VectorXcd expect = 0.6 * q.amps() + 0.8 * qt.amps();
  expect.normalize();
  CHECK((qm.amps() - expect).norm() < 1e-12);
}

TEST_CASE("decode respects the relabel map") {
  PairEncoding enc;
  enc.pairs = {{1, 2}};
  enc.path_to_slot = {{21, 1}, {42, 2}};
  PolyState s =
      PolyState::single(Monomial{{om(21, Pol::V), om(42, Pol::H)}}, 1.0);
  QutritState q = decode(s, enc);
  CHECK(std::abs(q.amp(1) - Complex{1.0}) < 1e-12);  // |1⟩ = VH
}

TEST_CASE("decode errors") {
  // HV pair is outside the encoding and must name the monomial.
  PolyState bad;
  bad.accumulate(word6("HVVVVH"), 1.0);
  CHECK_THROWS_WITH_AS(decode(bad, PairEncoding{}),
                       doctest::Contains("1:H"), DecodeError);

  // Wrong photon count is a shape error.
  PolyState five = PolyState::single(
      Monomial{{om(1, Pol::V), om(2, Pol::V), om(3, Pol::V), om(4, Pol::H),
                om(5, Pol::V)}},
      1.0);
  CHECK_THROWS_AS(decode(five, PairEncoding{}), DecodeError);

  // Two photons in one slot.
  PolyState doubled = PolyState::single(
      Monomial{{om(1, Pol::V), om(1, Pol::H), om(3, Pol::V), om(4, Pol::H),
                om(5, Pol::V), om(6, Pol::H)}},
      1.0);
  CHECK_THROWS_AS(decode(doubled, PairEncoding{}), DecodeError);

  CHECK_THROWS_AS(decode(PolyState{}, PairEncoding{}), DecodeError);
}

TEST_CASE("fidelity and phase-invariant comparison") {
  QutritState z = logical_zero();
  CHECK(fidelity(z, z) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fidelity(z, maxent2()), std::invalid_argument);

  Eigen::VectorXcd rotated = std::polar(1.0, 1.234) * z.amps();
  CHECK(phase_invariant_equal(z, QutritState(3, rotated), 1e-12));
  CHECK_FALSE(phase_invariant_equal(z, logical_one(), 1e-12));
}

TEST_CASE("json serialization shape") {
  QutritState m = maxent2();
  std::string j = m.json();
  CHECK(j.substr(0, 15) == "{\"n\":2,\"amps\":[");
  CHECK(j.find("[0.57735026919,0]") != std::string::npos);
}
