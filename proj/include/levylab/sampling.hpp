#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levylab/core.hpp"
#include "levylab/rng.hpp"

namespace levylab::sampling {

using Complex = std::complex<double>;

enum class ClassicalGroup { SO, SU, U, USp };

inline std::string group_label(ClassicalGroup g) {
  switch (g) {
    case ClassicalGroup::SO: return "SO";
    case ClassicalGroup::SU: return "SU";
    case ClassicalGroup::U: return "U";
    case ClassicalGroup::USp: return "USp";
  }
  return {};
}

inline ClassicalGroup parse_group(std::string_view s) {
  if (s == "SO" || s == "so") return ClassicalGroup::SO;
  if (s == "SU" || s == "su") return ClassicalGroup::SU;
  if (s == "U" || s == "u") return ClassicalGroup::U;
  if (s == "USp" || s == "usp") return ClassicalGroup::USp;
  throw invalid_spec_error(fmt::format("unknown group '{}'", s));
}

/// A Haar-distributed group element. For USp the matrix is 2n x 2n.
struct HaarSample {
  ClassicalGroup group = ClassicalGroup::SO;
  int n = 1;
  Eigen::MatrixXcd matrix;
};

/// J = [[0, I], [-I, 0]]; USp(2n) = { U unitary : U^T J U = J }.
inline Eigen::MatrixXd symplectic_form(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return j;
}

inline double unitarity_residual(const Eigen::MatrixXcd& m) {
  return (m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

inline double determinant_residual(const Eigen::MatrixXcd& m) { return std::abs(m.determinant() - 1.0); }

inline double symplectic_residual(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd j = symplectic_form(static_cast<int>(m.rows() / 2)).cast<Complex>();
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
}

/// Largest defect among the membership conditions of the sample's group.
inline double membership_residual(const HaarSample& s) {
  double r = unitarity_residual(s.matrix);
  switch (s.group) {
    case ClassicalGroup::SO:
      r = std::max({r, s.matrix.imag().cwiseAbs().maxCoeff(), determinant_residual(s.matrix)});
      break;
    case ClassicalGroup::SU: r = std::max(r, determinant_residual(s.matrix)); break;
    case ClassicalGroup::U: break;
    case ClassicalGroup::USp: r = std::max(r, symplectic_residual(s.matrix)); break;
  }
  return r;
}

/// Haar on SO(n): Gaussian matrix, QR with the sign of diag(R) folded into Q
/// (which makes Q Haar on O(n)), then the last column is negated if det = -1.
inline Eigen::MatrixXd haar_special_orthogonal(int n, Rng& rng) {
  if (n < 1) throw domain_violation("haar_special_orthogonal: n >= 1");
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(n - 1) *= -1.0;
  return q;
}

/// Haar on U(n): complex Ginibre matrix, QR, phases of diag(R) folded into Q.
inline Eigen::MatrixXcd haar_unitary(int n, Rng& rng) {
  if (n < 1) throw domain_violation("haar_unitary: n >= 1");
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = rng.normal();
      g(i, j) = Complex(re, rng.normal()) * s;
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

namespace detail {

// tau(p; q) = (-conj q; conj p): the quaternionic partner column.
inline Eigen::VectorXcd quaternionic_partner(const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size() / 2;
  Eigen::VectorXcd w(v.size());
  w.head(n) = -v.tail(n).conjugate();
  w.tail(n) = v.head(n).conjugate();
  return w;
}

}  // namespace detail

/// Haar on USp(2n) in the [[A, B], [-conj B, conj A]] block form.
/// Columns are built by quaternionic Gram-Schmidt on complex Gaussian vectors:
/// column k and its partner tau(column k) fill slots k and k + n. The map is
/// equivariant under USp(2n) and the Gaussian law is invariant, so the result is Haar.
inline Eigen::MatrixXcd haar_symplectic(int n, Rng& rng) {
  if (n < 1) throw domain_violation("haar_symplectic: n >= 1");
  const int N = 2 * n;
  Eigen::MatrixXcd m(N, N);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd v(N);
    for (;;) {
      for (int i = 0; i < N; ++i) {
        const double re = rng.normal();
        v(i) = Complex(re, rng.normal());
      }
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j < k; ++j) {
          v -= m.col(j) * m.col(j).dot(v);
          v -= m.col(j + n) * m.col(j + n).dot(v);
        }
      }
      const double norm = v.norm();
      if (norm > 1e-8) {
        v /= norm;
        break;
      }
    }
    m.col(k) = v;
    m.col(k + n) = detail::quaternionic_partner(v);
  }
  return m;
}

inline HaarSample sample_orthogonal(int n, Rng& rng) {
  return {ClassicalGroup::SO, n, haar_special_orthogonal(n, rng).cast<Complex>()};
}

inline HaarSample sample_unitary(int n, Rng& rng) { return {ClassicalGroup::U, n, haar_unitary(n, rng)}; }

/// Haar U(n) with the last column divided by det. Left multiplication by SU(n)
/// commutes with that correction, so the law is Haar on SU(n).
inline HaarSample sample_special_unitary(int n, Rng& rng) {
  Eigen::MatrixXcd u = haar_unitary(n, rng);
  u.col(n - 1) /= u.determinant();
  return {ClassicalGroup::SU, n, std::move(u)};
}

inline HaarSample sample_symplectic(int n, Rng& rng) {
  return {ClassicalGroup::USp, n, haar_symplectic(n, rng)};
}

inline HaarSample sample_haar(ClassicalGroup g, int n, Rng& rng) {
  switch (g) {
    case ClassicalGroup::SO: return sample_orthogonal(n, rng);
    case ClassicalGroup::SU: return sample_special_unitary(n, rng);
    case ClassicalGroup::U: return sample_unitary(n, rng);
    case ClassicalGroup::USp: return sample_symplectic(n, rng);
  }
  return {};
}

/// Uniform point on the unit sphere S^{dim-1} in R^dim.
inline Eigen::VectorXd uniform_on_sphere(int dim, Rng& rng) {
  if (dim < 1) throw domain_violation("uniform_on_sphere: dim >= 1");
  Eigen::VectorXd v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) v(i) = rng.normal();
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

/// Uniform point on the unit sphere of C^dim.
inline Eigen::VectorXcd uniform_on_complex_sphere(int dim, Rng& rng) {
  if (dim < 1) throw domain_violation("uniform_on_complex_sphere: dim >= 1");
  Eigen::VectorXcd v(dim);
  double norm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) {
      const double re = rng.normal();
      v(i) = Complex(re, rng.normal());
    }
    norm = v.norm();
  } while (norm == 0.0);
  return v / norm;
}

// ---------------------------------------------------------------------------
// CP^n angular coordinates

/// xi in [0, pi/2), phi_a in [0, pi/2) for a = 1..n-1, theta_i in [0, 2 pi) for i = 1..n.
struct CpnAngles {
  int n = 1;
  double xi = 0.0;
  std::vector<double> phi;
  std::vector<double> theta;
};

inline constexpr double half_pi = pi / 2.0;

namespace detail {

inline double below_half_pi(double x) { return x < half_pi ? x : std::nextafter(half_pi, 0.0); }

}  // namespace detail

/// Inverse CDF of the density proportional to cos(xi) sin^{2n-1}(xi): CDF sin^{2n}(xi).
inline double xi_from_uniform(int n, double u) {
  return std::asin(std::pow(std::clamp(u, 0.0, 1.0), 1.0 / (2.0 * n)));
}

/// Inverse CDF of the density proportional to sin(phi) cos^{2a-1}(phi): CDF 1 - cos^{2a}(phi).
inline double phi_from_uniform(int a, double u) {
  return std::acos(std::pow(1.0 - std::clamp(u, 0.0, 1.0), 1.0 / (2.0 * a)));
}

inline CpnAngles sample_cpn_angles(int n, Rng& rng) {
  if (n < 1) throw domain_violation("sample_cpn_angles: n >= 1");
  CpnAngles a;
  a.n = n;
  a.xi = detail::below_half_pi(xi_from_uniform(n, rng.uniform()));
  a.phi.reserve(static_cast<std::size_t>(n - 1));
  for (int k = 1; k <= n - 1; ++k) a.phi.push_back(detail::below_half_pi(phi_from_uniform(k, rng.uniform())));
  a.theta.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) a.theta.push_back(two_pi * rng.uniform());
  return a;
}

/// Unit-norm representative of (1 : tan(xi) R_1 e^{i psi_1} : ... : tan(xi) R_n e^{i psi_n}),
/// with psi = a.theta. At xi = pi/2 this is the point (0 : R_1 e^{i psi_1} : ...) on the
/// hyperplane at infinity.
inline Eigen::VectorXcd angles_to_homogeneous(const CpnAngles& a, std::span<const double> sphere_coords) {
  if (static_cast<int>(sphere_coords.size()) != a.n || static_cast<int>(a.theta.size()) != a.n) {
    throw domain_violation("angles_to_homogeneous: need n sphere coordinates and n phases");
  }
  double r2 = 0.0;
  for (double r : sphere_coords) r2 += r * r;
  if (std::abs(r2 - 1.0) > 1e-10) throw domain_violation("angles_to_homogeneous: R is not on the unit sphere");

  const bool at_infinity = a.xi == half_pi;
  const double c = at_infinity ? 0.0 : std::cos(a.xi);
  const double s = at_infinity ? 1.0 : std::sin(a.xi);
  Eigen::VectorXcd z(a.n + 1);
  z(0) = c;
  for (int i = 0; i < a.n; ++i) z(i + 1) = s * sphere_coords[i] * std::polar(1.0, a.theta[i]);
  return z;
}

enum class HaarRoute { column, full_matrix };

/// |zeta_0|^2 = cos^2(xi) for the CP^n point obtained from a Haar element of SU(n+1)
/// acting on the base point (1 : 0 : ... : 0). The column route draws the image
/// column directly as a uniform unit vector of C^{n+1} (same law, O(n) cost).
inline double cpn_point_from_haar(int n, Rng& rng, HaarRoute route = HaarRoute::column) {
  if (n < 1) throw domain_violation("cpn_point_from_haar: n >= 1");
  if (route == HaarRoute::full_matrix) {
    const HaarSample g = sample_special_unitary(n + 1, rng);
    return std::norm(g.matrix(0, 0));
  }
  return std::norm(uniform_on_complex_sphere(n + 1, rng)(0));
}

/// Fubini-Study metric g_{i jbar} = delta_ij / (1 + |z|^2) - conj(z_i) z_j / (1 + |z|^2)^2
/// in the affine chart zeta_0 != 0.
inline Eigen::MatrixXcd fs_metric_components(const Eigen::VectorXcd& z) {
  const double s = 1.0 + z.squaredNorm();
  const Eigen::Index n = z.size();
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(n, n) / s;
  g -= z.conjugate() * z.transpose() / (s * s);
  return g;
}

// ---------------------------------------------------------------------------
// Binary sample dumps: 16-byte header (magic u32, values per record u32,
// record count u64) followed by little-endian doubles, row major.

inline constexpr std::uint32_t dump_magic = 0x5359564Cu;  // "LVYS"

namespace detail {

template <class T>
void write_le(std::ostream& os, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T read_le(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw io_error("sample dump truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

}  // namespace detail

struct SampleDump {
  std::uint32_t values_per_record = 0;
  std::vector<double> values;
  [[nodiscard]] std::uint64_t count() const {
    return values_per_record == 0 ? 0 : values.size() / values_per_record;
  }
};

inline void write_sample_dump(std::ostream& os, std::uint32_t values_per_record, std::span<const double> values) {
  if (values_per_record == 0 || values.size() % values_per_record != 0) {
    throw domain_violation("write_sample_dump: value count is not a multiple of the record size");
  }
  detail::write_le(os, dump_magic);
  detail::write_le(os, values_per_record);
  detail::write_le(os, static_cast<std::uint64_t>(values.size() / values_per_record));
  for (double v : values) detail::write_le(os, v);
  if (!os) throw io_error("write_sample_dump: stream failure");
}

inline SampleDump read_sample_dump(std::istream& is) {
  if (detail::read_le<std::uint32_t>(is) != dump_magic) throw io_error("sample dump: bad magic");
  SampleDump d;
  d.values_per_record = detail::read_le<std::uint32_t>(is);
  const auto count = detail::read_le<std::uint64_t>(is);
  d.values.resize(static_cast<std::size_t>(count * d.values_per_record));
  for (double& v : d.values) v = detail::read_le<double>(is);
  return d;
}

}  // namespace levylab::sampling
