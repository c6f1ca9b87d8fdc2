#include "qcovpca/linalg.hpp"

#include <cmath>

namespace qcovpca {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimMismatch(std::string(what) + ": dimensions " + std::to_string(a) +
                          " and " + std::to_string(b) + " differ");
    }
}

}  // namespace

double ComplexVector::norm_sq() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return s;
}

double ComplexVector::norm() const { return std::sqrt(norm_sq()); }

bool ComplexVector::is_finite() const {
    for (const cplx& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

ComplexVector& ComplexVector::operator*=(cplx factor) {
    for (cplx& z : data_) z *= factor;
    return *this;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
    require_same_dim(dim(), other.dim(), "vector add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& other) {
    require_same_dim(dim(), other.dim(), "vector sub");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

bool ComplexMatrix::is_finite() const {
    for (const cplx& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx factor) {
    for (cplx& z : data_) z *= factor;
    return *this;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(dim(), other.dim(), "matrix add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(dim(), other.dim(), "matrix sub");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
ComplexVector operator*(cplx factor, ComplexVector v) { return v *= factor; }
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx factor, ComplexMatrix m) { return m *= factor; }

cplx inner(const ComplexVector& a, const ComplexVector& b) {
    require_same_dim(a.dim(), b.dim(), "inner");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
    require_same_dim(a.dim(), b.dim(), "outer");
    const std::size_t d = a.dim();
    ComplexMatrix m(d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            m(j, k) = a[j] * std::conj(b[k]);
        }
    }
    return m;
}

ComplexMatrix outer(const ComplexVector& v) { return outer(v, v); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "matmul");
    const std::size_t d = a.dim();
    ComplexMatrix c(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < d; ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& x) {
    require_same_dim(a.dim(), x.dim(), "matvec");
    const std::size_t d = a.dim();
    ComplexVector y(d);
    for (std::size_t i = 0; i < d; ++i) {
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < d; ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

cplx trace(const ComplexMatrix& a) {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) s += a(i, i);
    return s;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    const std::size_t d = a.dim();
    ComplexMatrix b(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            b(i, j) = std::conj(a(j, i));
        }
    }
    return b;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "frobenius_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        s += std::norm(a.entries()[i] - b.entries()[i]);
    }
    return std::sqrt(s);
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    double s = 0.0;
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            s += std::norm(a(i, j) - std::conj(a(j, i)));
        }
    }
    return std::sqrt(s) <= tol * std::max(1.0, frobenius_norm(a));
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    const std::size_t d = a.dim();
    ComplexMatrix h(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
    }
    return h;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    ComplexMatrix p = matmul(u, dagger(u));
    for (std::size_t i = 0; i < p.dim(); ++i) p(i, i) -= 1.0;
    return frobenius_norm(p) <= tol;
}

}  // namespace qcovpca
