#pragma once

// Dense matrices over F or E. The element type supplies its own context
// (prime, precision, Delta), so every matrix is built from a prototype zero.

#include <limits>
#include <string>
#include <vector>

#include "stransfer/padic.hpp"

namespace stransfer {

template <class T>
struct RingTraits;

template <>
struct RingTraits<PadicNumber> {
  static PadicNumber zero_like(const PadicNumber& x) {
    return PadicNumber::zero(x.prime(), x.cap());
  }
  static PadicNumber one_like(const PadicNumber& x) {
    return PadicNumber::from_int(1, x.prime(), x.cap());
  }
  static PadicNumber from_int(const PadicNumber& x, int64_t n) {
    return PadicNumber::from_int(n, x.prime(), x.cap());
  }
  static int pivot_weight(const PadicNumber& x) {
    return x.is_zero() ? std::numeric_limits<int>::max() : x.valuation();
  }
  static std::string str(const PadicNumber& x) { return x.to_string(); }
};

template <>
struct RingTraits<ExtElement> {
  static ExtElement zero_like(const ExtElement& x) {
    auto z = PadicNumber::zero(x.re().prime(), x.re().cap());
    return ExtElement(z, z, x.delta_sq());
  }
  static ExtElement one_like(const ExtElement& x) {
    auto z = PadicNumber::zero(x.re().prime(), x.re().cap());
    return ExtElement(PadicNumber::from_int(1, z.prime(), z.cap()), z, x.delta_sq());
  }
  static ExtElement from_int(const ExtElement& x, int64_t n) {
    auto z = PadicNumber::zero(x.re().prime(), x.re().cap());
    return ExtElement(PadicNumber::from_int(n, z.prime(), z.cap()), z, x.delta_sq());
  }
  static int pivot_weight(const ExtElement& x) {
    if (x.is_zero()) return std::numeric_limits<int>::max();
    return x.norm().is_zero() ? std::numeric_limits<int>::max() - 1 : x.norm_valuation();
  }
  static std::string str(const ExtElement& x) { return x.to_string(); }
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& zero)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols), zero) {}

  static Matrix identity(int n, const T& proto) {
    Matrix m(n, n, RingTraits<T>::zero_like(proto));
    for (int i = 0; i < n; ++i) m(i, i) = RingTraits<T>::one_like(proto);
    return m;
  }
  static Matrix diag(const std::vector<T>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()),
             RingTraits<T>::zero_like(d.at(0)));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }
  const T& proto() const { return a_.at(0); }
  T zero() const { return RingTraits<T>::zero_like(proto()); }
  T one() const { return RingTraits<T>::one_like(proto()); }

  Matrix operator+(const Matrix& o) const {
    Matrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix shape mismatch");
    Matrix r(rows_, o.cols_, zero());
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& x = (*this)(i, k);
        if (is_exact(x)) continue;
        for (int j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
      }
    return r;
  }
  Matrix scaled(const T& s) const {
    Matrix r = *this;
    for (auto& x : r.a_) x = s * x;
    return r;
  }
  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (!(a_[i] == o.a_[i])) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix r(cols_, rows_, zero());
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix block(int r0, int c0, int nr, int nc) const {
    Matrix r(nr, nc, zero());
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  void set_block(int r0, int c0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  T trace() const {
    T t = zero();
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  // det(tI - M), coefficients from t^0 up to the leading 1 (Berkowitz).
  std::vector<T> charpoly() const {
    if (rows_ != cols_) throw DomainError("charpoly of non-square matrix");
    const int n = rows_;
    std::vector<T> vect{one(), -(*this)(0, 0)};  // highest degree first
    for (int r = 1; r < n; ++r) {
      std::vector<T> c(static_cast<size_t>(r + 2), zero());
      c[0] = one();
      c[1] = -(*this)(r, r);
      // powers M^k S where M is the leading r x r block and S = column r above the diagonal
      std::vector<T> v(static_cast<size_t>(r), zero());
      for (int i = 0; i < r; ++i) v[i] = (*this)(i, r);
      for (int k = 2; k <= r + 1; ++k) {
        T s = zero();
        for (int j = 0; j < r; ++j) s += (*this)(r, j) * v[j];
        c[k] = -s;
        std::vector<T> w(static_cast<size_t>(r), zero());
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) w[i] += (*this)(i, j) * v[j];
        v = std::move(w);
      }
      std::vector<T> nv(static_cast<size_t>(r + 2), zero());
      for (int i = 0; i < r + 2; ++i)
        for (int j = 0; j <= std::min(i, r); ++j) nv[i] += c[i - j] * vect[j];
      vect = std::move(nv);
    }
    return std::vector<T>(vect.rbegin(), vect.rend());
  }

  T det() const {
    auto cp = charpoly();
    return (rows_ % 2 == 0) ? cp[0] : -cp[0];
  }

  // Gauss-Jordan with minimal-valuation pivots.
  Matrix inverse() const {
    if (rows_ != cols_) throw DomainError("inverse of non-square matrix");
    const int n = rows_;
    Matrix a = *this;
    Matrix inv = identity(n, proto());
    for (int col = 0; col < n; ++col) {
      int best = -1, best_w = std::numeric_limits<int>::max();
      for (int r = col; r < n; ++r) {
        int w = RingTraits<T>::pivot_weight(a(r, col));
        if (w < best_w) best = r, best_w = w;
      }
      if (best < 0 || best_w >= std::numeric_limits<int>::max() - 1)
        throw PrecisionError("singular matrix at working precision");
      if (best != col)
        for (int j = 0; j < n; ++j) {
          std::swap(a(best, j), a(col, j));
          std::swap(inv(best, j), inv(col, j));
        }
      T piv = a(col, col).inverse();
      for (int j = 0; j < n; ++j) {
        a(col, j) = a(col, j) * piv;
        inv(col, j) = inv(col, j) * piv;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col || a(r, col).is_zero()) continue;
        T f = a(r, col);
        for (int j = 0; j < n; ++j) {
          a(r, j) = a(r, j) - f * a(col, j);
          inv(r, j) = inv(r, j) - f * inv(col, j);
        }
      }
    }
    return inv;
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(a_[0]));
    Matrix<U> r(rows_, cols_, f(a_[0]));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (const auto& x : a_) out.push_back(RingTraits<T>::str(x));
    return out;
  }

 private:
  static bool is_exact(const PadicNumber& x) { return x.is_exact_zero(); }
  static bool is_exact(const ExtElement& x) {
    return x.re().is_exact_zero() && x.im().is_exact_zero();
  }

  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using MatF = Matrix<PadicNumber>;
using MatE = Matrix<ExtElement>;

inline MatE conj(const MatE& m) {
  return m.map([](const ExtElement& x) { return x.conj(); });
}
inline MatE embed(const MatF& m, const QuadExtension& e) {
  return m.map([&](const PadicNumber& x) { return ExtElement::embed(x, e); });
}

// Evaluate a polynomial (coefficients low to high).
template <class T>
T poly_eval(const std::vector<T>& f, const T& x) {
  T acc = RingTraits<T>::zero_like(x);
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

}  // namespace stransfer
