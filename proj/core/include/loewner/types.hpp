#pragma once

#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

namespace loewner {

using Complex = std::complex<double>;

/// Point or tangent vector in C^n.
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Builds a vector from a list of entries, rejecting NaN/Inf.
ComplexVector make_vector(std::initializer_list<Complex> entries);

/// Throws InvalidArgument when any entry is NaN or infinite.
void require_finite(const ComplexVector& v, const char* what);
void require_finite(const ComplexMatrix& m, const char* what);

bool is_finite(const ComplexVector& v);

/// Hermitian product <z, w> = sum z_j conj(w_j).
inline Complex inner(const ComplexVector& z, const ComplexVector& w) { return w.dot(z); }

}  // namespace loewner
