#pragma once

// Dense kernels over both scalar backends. All functions are pure.
//
// Exact backend: fraction-free (Bareiss) elimination for determinants and
// exact Gauss-Jordan for inverses and ranks.
// Float backend: partial pivoting; pivots below tol * max|entry| count as zero.

#include "vbcert/index_tuple.hpp"
#include "vbcert/matrix.hpp"

namespace vbcert {

template <class T>
T det(const Matrix<T>& x);

template <class T>
Matrix<T> submatrix(const Matrix<T>& x, const IndexTuple& rows, const IndexTuple& cols);

/// det of the rows x cols submatrix. Named to stay clear of the libc `minor` macro.
template <class T>
T minor_det(const Matrix<T>& x, const IndexTuple& rows, const IndexTuple& cols);

/// r-th multiplicative compound: C(rows,r) x C(cols,r) matrix of r-minors in lex order.
///
/// Builds order r from order r-1 by first-row Laplace expansion, so every
/// (r-1)-minor is computed once; rows of each order are filled in parallel.
template <class T>
Matrix<T> compound(const Matrix<T>& x, int r);

/// Serial reference: one independent determinant per entry.
template <class T>
Matrix<T> compound_reference(const Matrix<T>& x, int r);

template <class T>
Matrix<T> inverse(const Matrix<T>& x);

template <class T>
int rank(const Matrix<T>& x);

template <class T>
Matrix<T> power(const Matrix<T>& x, int exponent);

/// Columns of x selected by a tuple.
template <class T>
Matrix<T> select_columns(const Matrix<T>& x, const IndexTuple& cols);

}  // namespace vbcert
