#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace plurigeo {

using Complex = std::complex<double>;

// Complexified tangent directions are indexed A in [0, 2n):
//   A <  n addresses d/dz^{A+1},
//   A >= n addresses d/dz̄^{A-n+1}.
inline bool is_barred(int a, int n) { return a >= n; }
inline int bar_flip(int a, int n) { return a < n ? a + n : a - n; }

struct ChartPoint {
  std::vector<Complex> z;

  int dim() const { return static_cast<int>(z.size()); }

  // Euclidean norm |z| over all coordinates.
  double norm() const {
    double s = 0.0;
    for (const auto& c : z) s += std::norm(c);
    return std::sqrt(s);
  }

  std::string to_string() const;
};

// Dense complex matrix, row-major. Sized for chart dimensions (n <= 8).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : a_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Complex> a_;
};

}  // namespace plurigeo
