#pragma once

#include "intpoly.hpp"

namespace lfm {

using CycMatrix = std::vector<std::vector<CycNum>>;

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(CycMatrix& A) {
  std::vector<int> piv;
  int rows = int(A.size());
  if (!rows) return piv;
  int cols = int(A[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && A[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    CycNum inv = A[r][c].inv();
    for (int k = c; k < cols; ++k) A[r][k] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      CycNum f = A[i][c];
      for (int k = c; k < cols; ++k)
        if (!A[r][k].is_zero()) A[i][k] -= f * A[r][k];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline int rank(CycMatrix A) { return int(rref(A).size()); }

// basis of {x : A x = 0}
inline std::vector<std::vector<CycNum>> kernel(CycMatrix A, int cols) {
  std::vector<int> piv = rref(A);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<CycNum>> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<CycNum> v(cols, CycNum(0));
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -A[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline CycNum det(CycMatrix A) {
  int n = int(A.size());
  CycNum d(1);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && A[p][c].is_zero()) ++p;
    if (p == n) return CycNum(0);
    if (p != c) {
      std::swap(A[p], A[c]);
      d = -d;
    }
    d *= A[c][c];
    CycNum inv = A[c][c].inv();
    for (int i = c + 1; i < n; ++i) {
      if (A[i][c].is_zero()) continue;
      CycNum f = A[i][c] * inv;
      for (int k = c; k < n; ++k) A[i][k] -= f * A[c][k];
    }
  }
  return d;
}

// Integer matrices, row-major
using IntMatrix = std::vector<std::vector<mpz_class>>;

inline IntMatrix identity_matrix(int n) {
  IntMatrix I(n, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline IntMatrix operator*(const IntMatrix& A, const IntMatrix& B) {
  int n = int(A.size()), m = int(B[0].size()), k = int(B.size());
  IntMatrix C(n, std::vector<mpz_class>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (int j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
    }
  return C;
}

inline IntMatrix operator-(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix C = A;
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) C[i][j] -= B[i][j];
  return C;
}

inline IntMatrix matrix_power(IntMatrix A, long e) {
  IntMatrix R = identity_matrix(int(A.size()));
  for (; e; e >>= 1, A = A * A)
    if (e & 1) R = R * A;
  return R;
}

// p(A) for an integer polynomial p
inline IntMatrix eval_matrix_poly(const IntPoly& p, const IntMatrix& A) {
  int n = int(A.size());
  IntMatrix R(n, std::vector<mpz_class>(n, 0));
  for (int i = p.degree(); i >= 0; --i) {
    R = R * A;
    for (int j = 0; j < n; ++j) R[j][j] += p[i];
  }
  return R;
}

inline int rank(const IntMatrix& M) {
  std::vector<std::vector<mpq_class>> A;
  for (auto& r : M) A.emplace_back(r.begin(), r.end());
  int rows = int(A.size()), cols = rows ? int(A[0].size()) : 0, r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && A[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(A[p], A[r]);
    for (int i = r + 1; i < rows; ++i) {
      if (A[i][c] == 0) continue;
      mpq_class f = A[i][c] / A[r][c];
      for (int k = c; k < cols; ++k) A[i][k] -= f * A[r][k];
    }
    ++r;
  }
  return r;
}

// det(t I - A) by Berkowitz (division free)
inline IntPoly charpoly(const IntMatrix& A) {
  int n = int(A.size());
  // vector C holds coefficients of the char poly of the leading r x r block, highest first
  std::vector<mpz_class> C{1, -A[0][0]};
  if (n == 0) return IntPoly{1};
  for (int r = 1; r < n; ++r) {
    // R = row r, cols 0..r-1; S = col r, rows 0..r-1; a = A[r][r]
    std::vector<mpz_class> col(r), tmp(r);
    for (int i = 0; i < r; ++i) col[i] = A[i][r];
    // Toeplitz entries: 1, -a, -R S, -R A S, -R A^2 S, ...
    std::vector<mpz_class> T(r + 2);
    T[0] = 1;
    T[1] = -A[r][r];
    std::vector<mpz_class> v = col;
    for (int k = 2; k <= r + 1; ++k) {
      mpz_class s = 0;
      for (int i = 0; i < r; ++i) s += A[r][i] * v[i];
      T[k] = -s;
      for (int i = 0; i < r; ++i) {
        tmp[i] = 0;
        for (int j = 0; j < r; ++j) tmp[i] += A[i][j] * v[j];
      }
      v = tmp;
    }
    std::vector<mpz_class> D(r + 2, 0);
    for (int i = 0; i < r + 2; ++i)
      for (int j = 0; j <= std::min(i, r); ++j) D[i] += T[i - j] * C[j];
    C = D;
  }
  std::vector<mpz_class> asc(C.rbegin(), C.rend());
  return IntPoly(std::move(asc));
}

}  // namespace lfm
