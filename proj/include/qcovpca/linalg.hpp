#ifndef QCOVPCA_LINALG_HPP
#define QCOVPCA_LINALG_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qcovpca/errors.hpp"

namespace qcovpca {

using cplx = std::complex<double>;

// Dense complex column vector.
class ComplexVector {
  public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim) : data_(dim, cplx{0.0, 0.0}) {}
    ComplexVector(std::initializer_list<cplx> entries) : data_(entries) {}
    explicit ComplexVector(std::vector<cplx> entries) : data_(std::move(entries)) {}

    std::size_t dim() const { return data_.size(); }
    cplx& operator[](std::size_t i) { return data_[i]; }
    const cplx& operator[](std::size_t i) const { return data_[i]; }

    std::vector<cplx>& entries() { return data_; }
    const std::vector<cplx>& entries() const { return data_; }

    double norm() const;
    double norm_sq() const;
    bool is_finite() const;

    ComplexVector& operator*=(cplx factor);
    ComplexVector& operator+=(const ComplexVector& other);
    ComplexVector& operator-=(const ComplexVector& other);

  private:
    std::vector<cplx> data_;
};

// Dense square complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    cplx& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const cplx& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    std::vector<cplx>& entries() { return data_; }
    const std::vector<cplx>& entries() const { return data_; }

    bool is_finite() const;

    ComplexMatrix& operator*=(cplx factor);
    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

ComplexVector operator+(ComplexVector a, const ComplexVector& b);
ComplexVector operator-(ComplexVector a, const ComplexVector& b);
ComplexVector operator*(cplx factor, ComplexVector v);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx factor, ComplexMatrix m);

// <a|b>, conjugate-linear in the first argument, so inner(v, v) == |v|^2.
cplx inner(const ComplexVector& a, const ComplexVector& b);

// |a><b|; outer(v) is shorthand for |v><v|.
ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix outer(const ComplexVector& v);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x);
cplx trace(const ComplexMatrix& a);
ComplexMatrix dagger(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// ||A - A^dagger||_F <= tol * max(1, ||A||_F)
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10);
// (A + A^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& a);

// ||U U^dagger - I||_F <= tol
bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

}  // namespace qcovpca

#endif
