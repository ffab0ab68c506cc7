#pragma once

// Reference computations that share no code with the library: literal Pauli
// Kronecker products, explicit partial traces, direct eigenvalue sums.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

// sy (x) sy is real although sy is not: sy (x) sy = -(i sy) (x) (i sy).
inline Mat sx() { return (Mat(2, 2) << 0, 1, 1, 0).finished(); }
inline Mat sz() { return (Mat(2, 2) << 1, 0, 0, -1).finished(); }
// i * sigma^y, real.
inline Mat isy() { return (Mat(2, 2) << 0, 1, -1, 0).finished(); }
inline Mat id2() { return Mat::Identity(2, 2); }

// Operator acting with `ops[k]` on site k and identity elsewhere. Site 0 is the
// least significant bit, so it is the rightmost Kronecker factor.
inline Mat site_product(int n, const std::vector<std::pair<int, Mat>>& ops) {
  Mat out = Mat::Identity(1, 1);
  for (int site = n - 1; site >= 0; --site) {
    Mat f = id2();
    for (const auto& [s, m] : ops) {
      if (s == site) f = m;
    }
    out = kron(out, f);
  }
  return out;
}

inline Mat bond(int n, int i, const Mat& a, const Mat& b) {
  const int j = (i + 1) % n;
  return site_product(n, {{i, a}, {j, b}});
}

// H = -sum (sx sx + g sz)
inline Mat ising(int n, double g) {
  const auto d = static_cast<Eigen::Index>(1) << n;
  Mat h = Mat::Zero(d, d);
  for (int i = 0; i < n; ++i) h -= bond(n, i, sx(), sx()) + g * site_product(n, {{i, sz()}});
  return h;
}

// sy sy = -(i sy)(i sy)
inline Mat xy(int n, double gamma, double field) {
  const auto d = static_cast<Eigen::Index>(1) << n;
  Mat h = Mat::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    h -= (1 + gamma) * bond(n, i, sx(), sx()) - (1 - gamma) * bond(n, i, isy(), isy()) +
         field * site_product(n, {{i, sz()}});
  }
  return h;
}

inline Mat xxz(int n, double delta) {
  const auto d = static_cast<Eigen::Index>(1) << n;
  Mat h = Mat::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    h += bond(n, i, sx(), sx()) - bond(n, i, isy(), isy()) + delta * bond(n, i, sz(), sz());
  }
  return h;
}

/// Periodic transverse Ising ground energy from free fermions, even N:
/// E0 = -sum_k sqrt(1 + g^2 - 2 g cos k), k = pi (2m + 1) / N.
inline double ising_free_fermion_energy(int n, double g) {
  const double pi = std::acos(-1.0);
  double e = 0.0;
  for (int m = 0; m < n; ++m) {
    const double k = pi * (2 * m + 1) / n;
    e -= std::sqrt(1 + g * g - 2 * g * std::cos(k));
  }
  return e;
}

/// Eigenvalues of rho_A = Tr_B |psi><psi| by explicit summation, descending.
inline std::vector<double> partial_trace_spectrum(const std::vector<double>& psi, int n, int a) {
  const std::size_t da = std::size_t{1} << a;
  const std::size_t db = std::size_t{1} << (n - a);
  Mat rho = Mat::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      double s = 0.0;
      for (std::size_t b = 0; b < db; ++b) s += psi[i + da * b] * psi[j + da * b];
      rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
    }
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(rho);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + da);
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

/// Plain-formula Renyi entropy in bits; entries below `floor` are skipped.
inline double renyi(const std::vector<double>& p, double alpha, double floor = 1e-12) {
  if (std::abs(alpha - 1.0) < 1e-12) {
    double s = 0.0;
    for (double x : p) {
      if (x > floor) s -= x * std::log2(x);
    }
    return s;
  }
  double t = 0.0;
  for (double x : p) {
    if (x > floor) t += std::pow(x, alpha);
  }
  return std::log2(t) / (1.0 - alpha);
}

/// psi majorized by phi (both normalized), via sorted partial sums.
inline bool majorized_by(std::vector<double> psi, std::vector<double> phi) {
  std::sort(psi.rbegin(), psi.rend());
  std::sort(phi.rbegin(), phi.rend());
  const std::size_t n = std::max(psi.size(), phi.size());
  psi.resize(n, 0.0);
  phi.resize(n, 0.0);
  double a = 0.0, b = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    a += psi[k];
    b += phi[k];
    if (a > b + 1e-12) return false;
  }
  return true;
}

/// Sign changes of S_alpha(p) - S_alpha(q) found by dense sampling.
inline int sampled_sign_changes(const std::vector<double>& p, const std::vector<double>& q, double lo, double hi,
                                double step) {
  int changes = 0;
  int prev = 0;
  for (double a = lo; a <= hi + 1e-12; a += step) {
    const double f = renyi(p, a) - renyi(q, a);
    const int s = std::abs(f) <= 1e-10 ? 0 : (f > 0 ? 1 : -1);
    if (s != 0) {
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
  }
  return changes;
}

}  // namespace oracle
