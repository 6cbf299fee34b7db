#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levylab/core.hpp"
#include "levylab/rootdata.hpp"

namespace levylab::liealg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

enum class Family { unitary, orthogonal, symplectic };

/// A compact classical Lie algebra in its defining representation:
/// su(n), so(n), or usp(2n) (n is the rank for the symplectic family).
struct AlgebraSpec {
  Family family = Family::unitary;
  int n = 2;

  [[nodiscard]] int defining_size() const { return family == Family::symplectic ? 2 * n : n; }

  [[nodiscard]] int dimension() const {
    switch (family) {
      case Family::unitary: return n * n - 1;
      case Family::orthogonal: return n * (n - 1) / 2;
      case Family::symplectic: return n * (2 * n + 1);
    }
    return 0;
  }

  /// Reference closed forms n+2, n-2, 2n+2. Brute force gives 2n for su(n), n >= 3; see the README.
  [[nodiscard]] double chi_closed_form() const {
    switch (family) {
      case Family::unitary: return n + 2.0;
      case Family::orthogonal: return n - 2.0;
      case Family::symplectic: return 2.0 * n + 2.0;
    }
    return 0.0;
  }

  [[nodiscard]] std::string name() const {
    switch (family) {
      case Family::unitary: return fmt::format("su({})", n);
      case Family::orthogonal: return fmt::format("so({})", n);
      case Family::symplectic: return fmt::format("usp({})", 2 * n);
    }
    return {};
  }

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

inline AlgebraSpec su(int n) { return {Family::unitary, n}; }
inline AlgebraSpec so(int n) { return {Family::orthogonal, n}; }
/// usp(2n), parametrised by the rank n.
inline AlgebraSpec usp(int n) { return {Family::symplectic, n}; }

/// Lie algebra of a group; B and D both map to so(N) with N the defining size.
inline AlgebraSpec algebra_of(const GroupSpec& g) {
  validate(g);
  switch (g.series) {
    case Series::A: return su(g.n);
    case Series::B: return so(2 * g.n + 1);
    case Series::C: return usp(g.n);
    case Series::D: return so(2 * g.n);
  }
  return {};
}

// Generator families. For su(n): H_k, S_kj, A_kj. For so(n): A_kj.
// For usp(2n): H_a, S^d_ij, A^d_ij, T_a, S^a_ij, U_a, A^a_ij.
enum class GeneratorKind { H, S, A, Sd, Ad, T, Sa, U, Aa };

/// Indices are 1-based as in the usual matrix-unit notation. U_a is stored as (a, a+n).
struct GeneratorLabel {
  GeneratorKind kind = GeneratorKind::H;
  int i = 0;
  int j = 0;
};

struct LieBasis {
  AlgebraSpec spec;
  int dim_rep = 0;
  std::vector<Matrix> generators;
  std::vector<GeneratorLabel> labels;

  [[nodiscard]] int dim_alg() const { return static_cast<int>(generators.size()); }
};

inline constexpr int max_dim_alg = 400;

namespace detail {

// E_{i,j} with 1-based indices
inline Matrix unit(int size, int i, int j) {
  Matrix m = Matrix::Zero(size, size);
  m(i - 1, j - 1) = 1.0;
  return m;
}

}  // namespace detail

inline void validate(const AlgebraSpec& a) {
  const int min_n = a.family == Family::orthogonal ? 3 : (a.family == Family::unitary ? 2 : 1);
  if (a.n < min_n) throw invalid_spec_error(fmt::format("{} is not a simple compact algebra here", a.name()));
  if (a.dimension() > max_dim_alg) {
    throw size_error(fmt::format("{} has dimension {} > {} (dense structure-constant guard)", a.name(),
                                 a.dimension(), max_dim_alg));
  }
}

/// Orthonormal basis, -1/2 Tr(T_i T_j) = delta_ij, in the defining representation.
/// Cartan elements come first for su and usp.
inline LieBasis build_basis(const AlgebraSpec& spec) {
  validate(spec);
  using detail::unit;
  const Complex I(0.0, 1.0);
  const double r2 = std::sqrt(2.0);
  const int N = spec.defining_size();

  LieBasis b;
  b.spec = spec;
  b.dim_rep = N;
  auto add = [&](Matrix m, GeneratorKind kind, int i, int j) {
    b.generators.push_back(std::move(m));
    b.labels.push_back({kind, i, j});
  };

  switch (spec.family) {
    case Family::unitary: {
      const int n = spec.n;
      for (int k = 1; k <= n - 1; ++k) {
        Matrix h = Matrix::Zero(n, n);
        for (int a = 1; a <= k; ++a) h(a - 1, a - 1) = 1.0;
        h(k, k) = -static_cast<double>(k);
        add(I * r2 / std::sqrt(static_cast<double>(k * k + k)) * h, GeneratorKind::H, k, 0);
      }
      for (int k = 1; k <= n; ++k)
        for (int j = k + 1; j <= n; ++j) add(I * (unit(n, k, j) + unit(n, j, k)), GeneratorKind::S, k, j);
      for (int k = 1; k <= n; ++k)
        for (int j = k + 1; j <= n; ++j) add(unit(n, k, j) - unit(n, j, k), GeneratorKind::A, k, j);
      break;
    }
    case Family::orthogonal: {
      for (int k = 1; k <= N; ++k)
        for (int j = k + 1; j <= N; ++j) add(unit(N, k, j) - unit(N, j, k), GeneratorKind::A, k, j);
      break;
    }
    case Family::symplectic: {
      const int n = spec.n;
      for (int a = 1; a <= n; ++a) add(I * (unit(N, a, a) - unit(N, a + n, a + n)), GeneratorKind::H, a, 0);
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          add(I / r2 * (unit(N, i, j) + unit(N, j, i) - unit(N, i + n, j + n) - unit(N, j + n, i + n)),
              GeneratorKind::Sd, i, j);
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          add((unit(N, i, j) - unit(N, j, i) + unit(N, i + n, j + n) - unit(N, j + n, i + n)) / r2,
              GeneratorKind::Ad, i, j);
      for (int a = 1; a <= n; ++a) add(I * (unit(N, a, a + n) + unit(N, a + n, a)), GeneratorKind::T, a, 0);
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          add(I / r2 * (unit(N, i, j + n) + unit(N, j, i + n) + unit(N, i + n, j) + unit(N, j + n, i)),
              GeneratorKind::Sa, i, j);
      for (int a = 1; a <= n; ++a) add(unit(N, a, a + n) - unit(N, a + n, a), GeneratorKind::U, a, a + n);
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          add((unit(N, i, j + n) + unit(N, j, i + n) - unit(N, i + n, j) - unit(N, j + n, i)) / r2,
              GeneratorKind::Aa, i, j);
      break;
    }
  }
  return b;
}

inline LieBasis build_basis(const GroupSpec& g) { return build_basis(algebra_of(g)); }

/// max |-1/2 Tr(T_i T_j) - delta_ij|
inline double normalization_residual(const LieBasis& b) {
  double worst = 0.0;
  for (int i = 0; i < b.dim_alg(); ++i)
    for (int j = 0; j < b.dim_alg(); ++j) {
      const Complex g = -0.5 * (b.generators[i] * b.generators[j]).trace();
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

/// max over generators of |T + T^dagger| (anti-Hermiticity) and, for su, |Tr T|.
inline double anti_hermiticity_residual(const LieBasis& b) {
  double worst = 0.0;
  for (const auto& t : b.generators) {
    worst = std::max(worst, (t + t.adjoint()).cwiseAbs().maxCoeff());
    if (b.spec.family == Family::unitary) worst = std::max(worst, std::abs(t.trace()));
  }
  return worst;
}

/// Dense c_{ij}^k with [T_i, T_j] = sum_k c_{ij}^k T_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int dim) : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  [[nodiscard]] int dim() const { return dim_; }
  double& operator()(int i, int j, int k) { return c_[index(i, j, k)]; }
  [[nodiscard]] double operator()(int i, int j, int k) const { return c_[index(i, j, k)]; }

 private:
  [[nodiscard]] std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_ = 0;
  std::vector<double> c_;
};

inline constexpr double basis_tolerance = 1e-12;
inline constexpr double jacobi_tolerance = 1e-9;
inline constexpr double killing_tolerance = 1e-8;

/// c_{ij}^k = -1/2 Tr([T_i, T_j] T_k). Throws basis_corruption_error when an
/// entry has an imaginary part above 1e-12.
inline StructureConstants structure_constants(const LieBasis& b) {
  const int d = b.dim_alg();
  if (d > max_dim_alg) throw size_error("structure_constants: dimension guard");
  const int N = b.dim_rep;
  const Eigen::Index N2 = static_cast<Eigen::Index>(N) * N;

  // row k holds vec(T_k^T), so (P vec(C))_k = Tr(C T_k)
  Matrix P(d, N2);
  for (int k = 0; k < d; ++k) {
    Matrix tt = b.generators[k].transpose();
    P.row(k) = Eigen::Map<const Eigen::RowVectorXcd>(tt.data(), N2);
  }

  StructureConstants sc(d);
  Matrix comm(N, N);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      comm.noalias() = b.generators[i] * b.generators[j];
      comm.noalias() -= b.generators[j] * b.generators[i];
      const Eigen::VectorXcd traces = P * Eigen::Map<const Eigen::VectorXcd>(comm.data(), N2);
      for (int k = 0; k < d; ++k) {
        const Complex c = -0.5 * traces(k);
        if (std::abs(c.imag()) > basis_tolerance) {
          throw basis_corruption_error(
              fmt::format("structure constant c[{},{},{}] has imaginary part {:.3g}", i, j, k, c.imag()));
        }
        sc(i, j, k) = c.real();
        sc(j, i, k) = -c.real();
      }
    }
  }
  return sc;
}

/// (ad_i)_{kj} = c_{ij}^k
inline Eigen::MatrixXd adjoint_matrix(const StructureConstants& sc, int i) {
  const int d = sc.dim();
  if (i < 0 || i >= d) throw domain_violation(fmt::format("adjoint_matrix: index {} out of range", i));
  Eigen::MatrixXd ad(d, d);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) ad(k, j) = sc(i, j, k);
  return ad;
}

/// K_ij = Tr(ad_i ad_j).
inline Eigen::MatrixXd killing_matrix(const StructureConstants& sc) {
  const int d = sc.dim();
  const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;
  Eigen::MatrixXd F(d, d2);
  Eigen::MatrixXd G(d, d2);
  for (int i = 0; i < d; ++i) {
    const Eigen::MatrixXd ad = adjoint_matrix(sc, i);
    const Eigen::MatrixXd adt = ad.transpose();
    F.row(i) = Eigen::Map<const Eigen::RowVectorXd>(ad.data(), d2);
    G.row(i) = Eigen::Map<const Eigen::RowVectorXd>(adt.data(), d2);
  }
  return F * G.transpose();
}

/// chi computed from a single probe generator: -1/2 Tr(ad_i^2).
inline double chi_from_generator(const StructureConstants& sc, int i) {
  const Eigen::MatrixXd ad = adjoint_matrix(sc, i);
  return -0.5 * (ad * ad).trace();
}

struct KillingReport {
  double chi = 0.0;
  /// max |K_ij + 2 chi delta_ij| with K_ij = Tr(ad_i ad_j)
  double killing_diagonal_spread = 0.0;
  double ricci_bound = 0.0;
};

/// chi = -1/2 Tr(ad_{T_1}^2); Ricci lower bound chi/4.
/// With this chi the full Killing matrix is -2 chi times the identity.
inline KillingReport chi_coefficient(const StructureConstants& sc) {
  if (sc.dim() == 0) throw domain_violation("chi_coefficient: empty algebra");
  KillingReport r;
  r.chi = chi_from_generator(sc, 0);
  const Eigen::MatrixXd K = killing_matrix(sc);
  r.killing_diagonal_spread =
      (K + 2.0 * r.chi * Eigen::MatrixXd::Identity(sc.dim(), sc.dim())).cwiseAbs().maxCoeff();
  r.ricci_bound = r.chi / 4.0;
  if (!(r.killing_diagonal_spread <= killing_tolerance)) {
    throw non_simple_error(fmt::format("Killing matrix deviates from -2 chi I by {:.3g}", r.killing_diagonal_spread));
  }
  return r;
}

/// max |c_ij^k + c_ji^k|
inline double antisymmetry_residual(const StructureConstants& sc) {
  double worst = 0.0;
  const int d = sc.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) worst = std::max(worst, std::abs(sc(i, j, k) + sc(j, i, k)));
  return worst;
}

/// max |c_ij^k + c_ik^j|; zero for an orthonormal basis of a compact algebra.
inline double total_antisymmetry_residual(const StructureConstants& sc) {
  double worst = 0.0;
  const int d = sc.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) worst = std::max(worst, std::abs(sc(i, j, k) + sc(i, k, j)));
  return worst;
}

/// Jacobi identity in adjoint form: max over i<j of |[ad_i, ad_j] - sum_k c_ij^k ad_k|.
inline double jacobi_residual(const StructureConstants& sc) {
  const int d = sc.dim();
  const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;
  std::vector<Eigen::MatrixXd> ads;
  ads.reserve(d);
  Eigen::MatrixXd stack(d2, d);
  for (int k = 0; k < d; ++k) {
    ads.push_back(adjoint_matrix(sc, k));
    stack.col(k) = Eigen::Map<const Eigen::VectorXd>(ads.back().data(), d2);
  }
  double worst = 0.0;
  Eigen::VectorXd cij(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = 0; k < d; ++k) cij(k) = sc(i, j, k);
      Eigen::MatrixXd lhs = ads[i] * ads[j] - ads[j] * ads[i];
      Eigen::Map<Eigen::VectorXd>(lhs.data(), d2) -= stack * cij;
      worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

/// Length of the one-parameter orbit exp(theta T), theta in [0, 2 pi], where T is the
/// two-plane rotation generator of the (k, j) plane: A_kj for su/so, U_a with j = a + n for usp.
inline double orbit_length_check(const LieBasis& b, int k, int j) {
  for (int g = 0; g < b.dim_alg(); ++g) {
    const auto& l = b.labels[g];
    const bool rotation = l.kind == GeneratorKind::A || l.kind == GeneratorKind::U;
    if (rotation && l.i == k && l.j == j) {
      const Matrix& t = b.generators[g];
      return two_pi * std::sqrt((-0.5 * (t * t).trace()).real());
    }
  }
  throw domain_violation(fmt::format("({}, {}) is not a two-plane rotation generator of {}", k, j, b.spec.name()));
}

}  // namespace levylab::liealg
