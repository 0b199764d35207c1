#include "occt/noise.hpp"

#include <cmath>
#include <cstdio>
#include <deque>

namespace occt {

namespace {

// Applies a 3×3 matrix to tensor factor k (0 = leftmost / most
// significant digit) of an n-qutrit amplitude vector.
Eigen::VectorXcd apply_factor(const Eigen::Matrix3cd& m, int k, int n,
                              const Eigen::VectorXcd& v) {
  Eigen::Index dim = v.size();
  Eigen::Index stride = 1;
  for (int j = n - 1 - k; j > 0; --j) stride *= 3;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index base = 0; base < dim; ++base) {
    int digit = static_cast<int>((base / stride) % 3);
    if (digit != 0) continue;  // visit each digit-0 representative once
    Eigen::Index i0 = base;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        out(i0 + r * stride) += m(r, c) * v(i0 + c * stride);
  }
  return out;
}

}  // namespace

std::array<Eigen::Matrix3cd, 8> gell_mann() {
  using M = Eigen::Matrix3cd;
  const Complex i{0.0, 1.0};
  std::array<M, 8> g;
  for (auto& m : g) m = M::Zero();
  g[0](0, 1) = 1; g[0](1, 0) = 1;
  g[1](0, 1) = -i; g[1](1, 0) = i;
  g[2](0, 0) = 1; g[2](1, 1) = -1;
  g[3](0, 2) = 1; g[3](2, 0) = 1;
  g[4](0, 2) = -i; g[4](2, 0) = i;
  g[5](1, 2) = 1; g[5](2, 1) = 1;
  g[6](1, 2) = -i; g[6](2, 1) = i;
  const double s = 1.0 / std::sqrt(3.0);
  g[7](0, 0) = s; g[7](1, 1) = s; g[7](2, 2) = -2.0 * s;
  return g;
}

Eigen::Matrix3cd haar_u3(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3cd z;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) z(r, c) = Complex{gauss(rng), gauss(rng)};
  Eigen::HouseholderQR<Eigen::Matrix3cd> qr(z);
  Eigen::Matrix3cd q = qr.householderQ();
  Eigen::Matrix3cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Phase fix: absorb the phases of diag(R) so the distribution is Haar.
  for (int c = 0; c < 3; ++c) {
    Complex d = r(c, c);
    q.col(c) *= d / std::abs(d);
  }
  return q;
}

Eigen::Matrix3cd haar_su3(std::mt19937_64& rng) {
  Eigen::Matrix3cd q = haar_u3(rng);
  // Rescale into SU(3) with the principal cube root of det.
  Complex det = q.determinant();
  q /= std::polar(1.0, std::arg(det) / 3.0);
  return q;
}

Eigen::Matrix3cd haar_su3(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_su3(rng);
}

QutritState apply_collective(const CollectiveChannel& ch,
                             const QutritState& s) {
  if (ch.arity != s.n())
    throw std::invalid_argument("apply_collective: arity mismatch");
  if (!ch.conjugate.empty() &&
      static_cast<int>(ch.conjugate.size()) != ch.arity)
    throw std::invalid_argument("apply_collective: mask length mismatch");
  Eigen::Matrix3cd conj_u = ch.unitary.conjugate();
  Eigen::VectorXcd v = s.amps();
  for (int k = 0; k < ch.arity; ++k) {
    bool conj = !ch.conjugate.empty() && ch.conjugate[k];
    v = apply_factor(conj ? conj_u : ch.unitary, k, s.n(), v);
  }
  return {s.n(), std::move(v)};
}

QutritState apply_collective(const Eigen::Matrix3cd& u, const QutritState& s) {
  return apply_collective(CollectiveChannel{u, s.n(), {}}, s);
}

QutritState apply_conjugate_pair(const Eigen::Matrix3cd& u,
                                 const QutritState& s) {
  if (s.n() != 2)
    throw std::invalid_argument("apply_conjugate_pair: expects 2 qutrits");
  return apply_collective(CollectiveChannel{u, 2, {false, true}}, s);
}

double OrbitBasis::projection_defect(const Eigen::VectorXcd& v) const {
  Eigen::VectorXcd coeffs = vectors_.adjoint() * v;
  return (v - vectors_ * coeffs).norm();
}

OrbitBasis lie_orbit_basis(const QutritState& seed, double rank_tol) {
  const int n = seed.n();
  const Eigen::Index dim = seed.dim();
  auto gens = gell_mann();

  std::vector<Eigen::VectorXcd> basis;
  basis.push_back(seed.normalized().amps());
  std::deque<Eigen::Index> frontier{0};

  auto orthogonalize = [&](Eigen::VectorXcd w) {
    // Two passes for numerical stability.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) w -= b.dot(w) * b;
    return w;
  };

  while (!frontier.empty()) {
    Eigen::Index vi = frontier.front();
    frontier.pop_front();
    for (const auto& lambda : gens) {
      // Collective representation: Σ_k I⊗…⊗λ⊗…⊗I.
      Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim);
      for (int k = 0; k < n; ++k)
        w += apply_factor(lambda, k, n, basis[vi]);
      double scale = std::max(1.0, w.norm());
      Eigen::VectorXcd res = orthogonalize(std::move(w));
      if (res.norm() > rank_tol * scale) {
        basis.push_back(res.normalized());
        frontier.push_back(static_cast<Eigen::Index>(basis.size()) - 1);
        if (static_cast<Eigen::Index>(basis.size()) > dim)
          throw std::runtime_error("lie_orbit_basis: failed to close");
      }
    }
  }

  Eigen::MatrixXcd m(dim, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c)
    m.col(static_cast<Eigen::Index>(c)) = basis[c];
  return {n, std::move(m)};
}

std::string NsReport::json() const {
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "{\"trials\":%d,\"seed\":%llu,\"leakage_max\":%.12g,"
                "\"norm_defect_max\":%.12g,\"span_overlap_max\":%.12g,"
                "\"orbit_dims\":[%d,%d],\"pass\":%s,\"tolerance\":%.12g%s}",
                trials, static_cast<unsigned long long>(seed), leakage_max,
                norm_defect_max, span_overlap_max, orbit_dim_zero,
                orbit_dim_one, pass ? "true" : "false", tolerance,
                vacuous ? ",\"vacuous\":true" : "");
  return buf;
}

NsReport certify_ns(const QutritState& zero, const QutritState& one,
                    int trials, std::uint64_t seed, double tolerance) {
  if (zero.n() != one.n())
    throw std::invalid_argument("certify_ns: qutrit count mismatch");
  if (std::abs(zero.normalized().amps().dot(one.normalized().amps())) > 1e-9)
    throw std::invalid_argument("certify_ns: states are not orthogonal");

  NsReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.tolerance = tolerance;
  rep.vacuous = trials <= 0;

  OrbitBasis b0 = lie_orbit_basis(zero);
  OrbitBasis b1 = lie_orbit_basis(one);
  rep.orbit_dim_zero = b0.dimension();
  rep.orbit_dim_one = b1.dimension();

  Eigen::MatrixXcd cross = b0.vectors().adjoint() * b1.vectors();
  rep.span_overlap_max = cross.cwiseAbs().maxCoeff();

  const int n = zero.n();
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    Eigen::Matrix3cd u = haar_su3(rng);
    CollectiveChannel ch{u, n, {}};

    // Cross-sector leakage: evolve each B1 basis vector and overlap
    // against B0.
    for (int c = 0; c < b1.dimension(); ++c) {
      QutritState y(n, b1.vectors().col(c));
      Eigen::VectorXcd wy = apply_collective(ch, y).amps();
      double leak = (b0.vectors().adjoint() * wy).cwiseAbs().maxCoeff();
      rep.leakage_max = std::max(rep.leakage_max, leak);
    }
    // Span preservation of the encoded states themselves.
    Eigen::VectorXcd w0 = apply_collective(ch, zero.normalized()).amps();
    Eigen::VectorXcd w1 = apply_collective(ch, one.normalized()).amps();
    rep.norm_defect_max = std::max(rep.norm_defect_max,
                                   std::max(b0.projection_defect(w0),
                                            b1.projection_defect(w1)));
  }

  rep.pass = rep.leakage_max < tolerance &&
             rep.norm_defect_max < tolerance &&
             rep.span_overlap_max < tolerance;
  return rep;
}

}  // namespace occt
