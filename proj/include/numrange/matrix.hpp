#pragma once

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "numrange/sip.hpp"

namespace numrange {

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    explicit ComplexMatrix(int n) : n_(n), e_(static_cast<std::size_t>(n) * n) {
        if (n < 1) throw std::invalid_argument("ComplexMatrix: order must be >= 1");
    }

    static ComplexMatrix of(std::initializer_list<std::initializer_list<Complex>> rows) {
        const int n = static_cast<int>(rows.size());
        ComplexMatrix m(n);
        int i = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("ComplexMatrix: rows must form a square matrix");
            int j = 0;
            for (const Complex& v : row) m.at(i, j++) = v;
            ++i;
        }
        m.require_finite();
        return m;
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    int order() const { return n_; }

    Complex& at(int i, int j) { return e_[static_cast<std::size_t>(i) * n_ + j]; }
    const Complex& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * n_ + j]; }

    CVec apply(const CVec& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("ComplexMatrix: dimension mismatch");
        CVec y(x.size());
        for (int i = 0; i < n_; ++i) {
            Complex acc{0.0, 0.0};
            for (int j = 0; j < n_; ++j) acc += at(i, j) * x[static_cast<std::size_t>(j)];
            y[static_cast<std::size_t>(i)] = acc;
        }
        return y;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m.at(j, i) = std::conj(at(i, j));
        return m;
    }

    bool is_real() const {
        for (const Complex& v : e_)
            if (v.imag() != 0.0) return false;
        return true;
    }

    double frobenius_norm() const {
        double acc = 0.0;
        for (const Complex& v : e_) acc += std::norm(v);
        return std::sqrt(acc);
    }

    void require_finite() const {
        for (const Complex& v : e_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("ComplexMatrix: entries must be finite");
    }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("ComplexMatrix: order mismatch");
        ComplexMatrix m(a.n_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] + b.e_[k];
        return m;
    }

    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
        ComplexMatrix m(a.n_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = s * a.e_[k];
        return m;
    }

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }

private:
    int n_;
    std::vector<Complex> e_;
};

/// alpha*I + beta*T
inline ComplexMatrix affine_of(Complex alpha, Complex beta, const ComplexMatrix& t) {
    return alpha * ComplexMatrix::identity(t.order()) + beta * t;
}

} // namespace numrange
