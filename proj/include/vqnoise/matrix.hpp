#ifndef VQNOISE_MATRIX_HPP
#define VQNOISE_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "vqnoise/types.hpp"

namespace vqnoise {

// Small dense square complex matrix, row-major. Sized for gate matrices and
// test oracles (dim <= 2^8), not for large-scale linear algebra.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim, cplx{0.0, 0.0}) {}
    Matrix(std::size_t dim, std::vector<cplx> entries);

    static Matrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    cplx& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }
    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    Matrix adjoint() const;
    cplx trace() const;

    bool is_unitary(double tol) const;
    bool is_hermitian(double tol) const;

    friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
    friend Matrix operator+(const Matrix& lhs, const Matrix& rhs);
    friend Matrix operator-(const Matrix& lhs, const Matrix& rhs);
    friend Matrix operator*(cplx s, const Matrix& m);

    std::vector<cplx> apply(const std::vector<cplx>& v) const;

    double max_abs_diff(const Matrix& other) const;

  private:
    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

Matrix kron(const Matrix& a, const Matrix& b);

} // namespace vqnoise

#endif
