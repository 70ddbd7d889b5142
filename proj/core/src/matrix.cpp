#include "coxtop/matrix.hpp"

namespace coxtop {

namespace {

std::vector<std::vector<Integer>> integer_rows(const Matrix<Rational>& m, Rational* scale) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  Rational s = 1;
  for (int i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (int j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (int j = 0; j < m.cols(); ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
    s *= l;
  }
  if (scale) *scale = s;
  return a;
}

// Returns rank; det_sign/last pivot give the determinant for square input.
int bareiss(std::vector<std::vector<Integer>>& a, int cols, int* sign) {
  const int rows = static_cast<int>(a.size());
  Integer prev = 1;
  int r = 0;
  *sign = 1;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      *sign = -*sign;
    }
    for (int i = r + 1; i < rows; ++i) {
      for (int k = c + 1; k < cols; ++k) {
        a[i][k] = a[i][k] * a[r][c] - a[i][c] * a[r][k];
        mpz_divexact(a[i][k].get_mpz_t(), a[i][k].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

}  // namespace

int rank_bareiss(const Matrix<Rational>& m) {
  auto a = integer_rows(m, nullptr);
  int sign = 1;
  return bareiss(a, m.cols(), &sign);
}

Rational det_bareiss(const Matrix<Rational>& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  Rational scale;
  auto a = integer_rows(m, &scale);
  int sign = 1;
  if (bareiss(a, n, &sign) < n) return 0;
  return Rational(Integer(sign * a[n - 1][n - 1])) / scale;
}

Matrix<Cyclo> to_cyclo(const Matrix<Golden>& m) {
  return m.map<Cyclo>([](const Golden& g) { return Cyclo::from_golden(g); });
}

Matrix<Cyclo> to_cyclo(const Matrix<Rational>& m) {
  return m.map<Cyclo>([](const Rational& q) { return Cyclo(q); });
}

}  // namespace coxtop
