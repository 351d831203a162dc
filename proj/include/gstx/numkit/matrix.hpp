#pragma once

// Fixed-size dense real vectors and matrices (row-major), sized at compile
// time. Only what the moment equations and the 2x2/8x8 Gaussian algebra need.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace gstx::numkit {

template <std::size_t N>
struct Vector {
  std::array<double, N> v{};

  static constexpr std::size_t size() { return N; }

  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }

  static Vector zero() { return {}; }

  Vector& operator+=(const Vector& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] += o.v[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    for (std::size_t i = 0; i < N; ++i) v[i] -= o.v[i];
    return *this;
  }
  Vector& operator*=(double s) {
    for (auto& x : v) x *= s;
    return *this;
  }

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(double s, Vector a) { return a *= s; }
  friend Vector operator*(Vector a, double s) { return a *= s; }
  friend bool operator==(const Vector&, const Vector&) = default;
};

template <std::size_t N>
struct Matrix {
  std::array<double, N * N> a{};

  static constexpr std::size_t dim() { return N; }

  double& operator()(std::size_t i, std::size_t j) { return a[i * N + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * N + j]; }

  static Matrix zero() { return {}; }

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  /// Row-major initializer; the list must hold exactly N*N entries.
  static Matrix from_rows(std::initializer_list<double> entries) {
    if (entries.size() != N * N) throw std::invalid_argument("Matrix::from_rows: wrong entry count");
    Matrix m;
    std::size_t k = 0;
    for (double x : entries) m.a[k++] = x;
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] += o.a[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) a[i] -= o.a[i];
    return *this;
  }
  Matrix& operator*=(double s) {
    for (auto& x : a) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
  friend Matrix operator*(double s, Matrix x) { return x *= s; }
  friend Matrix operator*(Matrix x, double s) { return x *= s; }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

template <std::size_t N>
Matrix<N> operator*(const Matrix<N>& x, const Matrix<N>& y) {
  Matrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t k = 0; k < N; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      for (std::size_t j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

template <std::size_t N>
Vector<N> operator*(const Matrix<N>& m, const Vector<N>& x) {
  Vector<N> r;
  for (std::size_t i = 0; i < N; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s += m(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

template <std::size_t N>
Matrix<N> transpose(const Matrix<N>& m) {
  Matrix<N> t;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) t(j, i) = m(i, j);
  return t;
}

/// (m + m^T) / 2; the result is exactly symmetric.
template <std::size_t N>
Matrix<N> symmetrized(const Matrix<N>& m) {
  Matrix<N> s;
  for (std::size_t i = 0; i < N; ++i) {
    s(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < N; ++j) {
      const double x = 0.5 * (m(i, j) + m(j, i));
      s(i, j) = x;
      s(j, i) = x;
    }
  }
  return s;
}

template <std::size_t N>
double dot(const Vector<N>& x, const Vector<N>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += x[i] * y[i];
  return s;
}

template <std::size_t N>
double norm(const Vector<N>& x) {
  return std::sqrt(dot(x, x));
}

template <std::size_t N>
bool all_finite(const Vector<N>& x) {
  for (double e : x.v)
    if (!std::isfinite(e)) return false;
  return true;
}

template <std::size_t N>
bool all_finite(const Matrix<N>& m) {
  for (double e : m.a)
    if (!std::isfinite(e)) return false;
  return true;
}

template <std::size_t N>
double max_abs_diff(const Matrix<N>& x, const Matrix<N>& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

template <std::size_t N>
double max_asymmetry(const Matrix<N>& m) {
  return max_abs_diff(m, transpose(m));
}

inline double det2(const Matrix<2>& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

/// Inverse by adjugate over determinant. Throws on an exactly singular input.
inline Matrix<2> inverse2(const Matrix<2>& m) {
  const double d = det2(m);
  if (d == 0.0 || !std::isfinite(d)) throw std::domain_error("inverse2: singular matrix");
  return Matrix<2>::from_rows({m(1, 1) / d, -m(0, 1) / d, -m(1, 0) / d, m(0, 0) / d});
}

/// Lower-triangular L with m = L L^T. Throws if m is not positive definite.
template <std::size_t N>
Matrix<N> cholesky(const Matrix<N>& m) {
  Matrix<N> l;
  for (std::size_t j = 0; j < N; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw std::domain_error("cholesky: matrix is not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < N; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
template <std::size_t N>
std::array<double, N> symmetric_eigenvalues(Matrix<N> m) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        if (i != j) off += m(i, j) * m(i, j);
        scale += m(i, j) * m(i, j);
      }
    if (off <= 1e-30 * scale || off == 0.0) break;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          const double mkp = m(k, p);
          const double mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          const double mpk = m(p, k);
          const double mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
  }
  std::array<double, N> ev;
  for (std::size_t i = 0; i < N; ++i) ev[i] = m(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace gstx::numkit
