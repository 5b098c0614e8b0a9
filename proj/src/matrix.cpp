#include "vqnoise/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace vqnoise {

Matrix::Matrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != dim * dim) throw std::invalid_argument("Matrix: entry count != dim^2");
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

cplx Matrix::trace() const {
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("Matrix multiply: dimension mismatch");
    const std::size_t d = lhs.dim_;
    Matrix out(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) {
            const cplx v = lhs(r, k);
            if (v == cplx{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < d; ++c) out(r, c) += v * rhs(k, c);
        }
    }
    return out;
}

Matrix operator+(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("Matrix add: dimension mismatch");
    Matrix out = lhs;
    for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += rhs.a_[i];
    return out;
}

Matrix operator-(const Matrix& lhs, const Matrix& rhs) {
    if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("Matrix sub: dimension mismatch");
    Matrix out = lhs;
    for (std::size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= rhs.a_[i];
    return out;
}

Matrix operator*(cplx s, const Matrix& m) {
    Matrix out = m;
    for (auto& v : out.a_) v *= s;
    return out;
}

std::vector<cplx> Matrix::apply(const std::vector<cplx>& v) const {
    if (v.size() != dim_) throw std::invalid_argument("Matrix apply: dimension mismatch");
    std::vector<cplx> out(dim_, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < dim_; ++r) {
        cplx acc{0.0, 0.0};
        for (std::size_t c = 0; c < dim_; ++c) acc += (*this)(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

bool Matrix::is_unitary(double tol) const {
    Matrix p = (*this) * adjoint();
    return p.max_abs_diff(identity(dim_)) <= tol;
}

bool Matrix::is_hermitian(double tol) const {
    return max_abs_diff(adjoint()) <= tol;
}

double Matrix::max_abs_diff(const Matrix& other) const {
    if (dim_ != other.dim_) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - other.a_[i]));
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    Matrix out(da * db);
    for (std::size_t ra = 0; ra < da; ++ra)
        for (std::size_t ca = 0; ca < da; ++ca) {
            const cplx v = a(ra, ca);
            if (v == cplx{0.0, 0.0}) continue;
            for (std::size_t rb = 0; rb < db; ++rb)
                for (std::size_t cb = 0; cb < db; ++cb)
                    out(ra * db + rb, ca * db + cb) = v * b(rb, cb);
        }
    return out;
}

} // namespace vqnoise
