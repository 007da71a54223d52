// fock.hpp — truncated Fock-space operators, coherent states, displaced parity

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <vector>

#include "qbm/errors.hpp"

namespace qbm::fock {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline std::vector<double> sqrt_table(int dim) {
    std::vector<double> s(dim + 1);
    for (int k = 0; k <= dim; ++k) s[k] = std::sqrt(static_cast<double>(k));
    return s;
}

// out = a * in      (a|k> = sqrt(k)|k-1>)
inline void apply_a_left(const Matrix& in, Matrix& out, const std::vector<double>& s) {
    const int d = static_cast<int>(in.rows());
    out.resize(d, d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d - 1; ++i) out(i, j) = s[i + 1] * in(i + 1, j);
        out(d - 1, j) = 0.0;
    }
}

// out = a† * in
inline void apply_adag_left(const Matrix& in, Matrix& out, const std::vector<double>& s) {
    const int d = static_cast<int>(in.rows());
    out.resize(d, d);
    for (int j = 0; j < d; ++j) {
        out(0, j) = 0.0;
        for (int i = d - 1; i >= 1; --i) out(i, j) = s[i] * in(i - 1, j);
    }
}

// out = in * a
inline void apply_a_right(const Matrix& in, Matrix& out, const std::vector<double>& s) {
    const int d = static_cast<int>(in.rows());
    out.resize(d, d);
    out.col(0).setZero();
    for (int j = 1; j < d; ++j) out.col(j) = s[j] * in.col(j - 1);
}

// out = in * a†
inline void apply_adag_right(const Matrix& in, Matrix& out, const std::vector<double>& s) {
    const int d = static_cast<int>(in.rows());
    out.resize(d, d);
    for (int j = 0; j < d - 1; ++j) out.col(j) = s[j + 1] * in.col(j + 1);
    out.col(d - 1).setZero();
}

inline Matrix annihilation(int dim) {
    Matrix a = Matrix::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

inline Vector coherent_vector(double alpha, int dim) {
    Vector c(dim);
    c(0) = std::exp(-0.5 * alpha * alpha);
    for (int n = 1; n < dim; ++n)
        c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    return c;
}

inline Vector fock_vector(int n, int dim) {
    if (n < 0 || n >= dim) throw DomainError("fock_vector: n out of range");
    Vector v = Vector::Zero(dim);
    v(n) = 1.0;
    return v;
}

// parity (-1)^n on the diagonal
inline Matrix parity(int dim) {
    Matrix p = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return p;
}

// D(beta) = exp(beta a† - beta* a), scaling-and-squaring matrix exponential
inline Matrix displacement(Complex beta, int dim) {
    const Matrix a = annihilation(dim);
    Matrix gen = beta * a.adjoint() - std::conj(beta) * a;
    return gen.exp();
}

// O_beta = D(beta) P D(-beta); W(beta) = (2/pi) tr(rho O_beta)
inline Matrix displaced_parity(Complex beta, int dim) {
    if (std::norm(beta) >= dim / 4.0)
        throw TruncationError("displaced_parity: |beta|^2 >= dim/4, displaced state "
                              "does not fit the truncation");
    if (beta == Complex(0.0, 0.0)) return parity(dim);
    const Matrix d = displacement(beta, dim);
    return d * parity(dim) * d.adjoint();
}

inline double wigner_with_obs(const Matrix& rho, const Matrix& obs) {
    return M_2_PI * (rho.cwiseProduct(obs.transpose())).sum().real();
}

inline double wigner_at(const Matrix& rho, Complex beta) {
    return wigner_with_obs(rho, displaced_parity(beta, static_cast<int>(rho.rows())));
}

}  // namespace qbm::fock
