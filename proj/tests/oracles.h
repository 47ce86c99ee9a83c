// Copyright 2026 The HQMM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference computations for the tests. Everything here is written directly in
// Eigen or with plain loops and shares no code with the library under test.

#ifndef HQMM_TESTS_ORACLES_H
#define HQMM_TESTS_ORACLES_H

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "hqmm/numkernel.h"

namespace oracle {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat to_eigen(const hqmm::ComplexMatrix &m) {
    Mat out(m.rows(), m.cols());
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

inline hqmm::ComplexMatrix from_eigen(const Mat &m) {
    std::vector<Cx> entries;
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            entries.push_back(m(r, c));
        }
    }
    return hqmm::ComplexMatrix(m.rows(), m.cols(), std::move(entries));
}

inline double max_diff(const Mat &a, const Mat &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++)
        for (Eigen::Index j = 0; j < a.cols(); j++)
            for (Eigen::Index k = 0; k < b.rows(); k++)
                for (Eigen::Index l = 0; l < b.cols(); l++)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// Tr_A or Tr_B of an operator on C^da (x) C^db by explicit index sums.
inline Mat trace_out_first(const Mat &m, int da, int db) {
    Mat out = Mat::Zero(db, db);
    for (int k = 0; k < db; k++)
        for (int l = 0; l < db; l++)
            for (int i = 0; i < da; i++) out(k, l) += m(i * db + k, i * db + l);
    return out;
}

inline Mat trace_out_second(const Mat &m, int da, int db) {
    Mat out = Mat::Zero(da, da);
    for (int i = 0; i < da; i++)
        for (int j = 0; j < da; j++)
            for (int k = 0; k < db; k++) out(i, j) += m(i * db + k, j * db + k);
    return out;
}

inline Eigen::VectorXd eigenvalues(const Mat &h) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

inline double trace_norm(const Mat &h) {
    return eigenvalues(h).cwiseAbs().sum();
}

inline double entropy_nats(const Mat &rho) {
    double s = 0;
    for (double p : eigenvalues(rho)) {
        if (p > 1e-14) s -= p * std::log(p);
    }
    return s;
}

inline double binary_entropy(double p) {
    double s = 0;
    if (p > 0) s -= p * std::log(p);
    if (p < 1) s -= (1 - p) * std::log(1 - p);
    return s;
}

inline Mat random_complex(std::mt19937_64 &rng, int rows, int cols) {
    std::normal_distribution<double> normal;
    Mat m(rows, cols);
    for (int r = 0; r < rows; r++)
        for (int c = 0; c < cols; c++) m(r, c) = Cx(normal(rng), normal(rng));
    return m;
}

inline Mat random_hermitian(std::mt19937_64 &rng, int n) {
    Mat g = random_complex(rng, n, n);
    return (g + g.adjoint()) / 2.0;
}

inline Mat random_density(std::mt19937_64 &rng, int n) {
    Mat g = random_complex(rng, n, n);
    Mat rho = g * g.adjoint();
    return rho / rho.trace().real();
}

// Isometry C^cols -> C^rows from the thin Q factor of a Gaussian matrix.
inline Mat random_isometry(std::mt19937_64 &rng, int rows, int cols) {
    Mat g = random_complex(rng, rows, cols);
    Eigen::HouseholderQR<Mat> qr(g);
    return qr.householderQ() * Mat::Identity(rows, cols);
}

// `rank` Kraus operators (da*db x da) whose stack is an isometry, so sum K^dagger K = I.
inline std::vector<Mat> random_unital_kraus(std::mt19937_64 &rng, int da, int db, int rank) {
    Mat stacked = random_isometry(rng, da * db * rank, da);
    std::vector<Mat> out;
    for (int r = 0; r < rank; r++) out.push_back(stacked.block(r * da * db, 0, da * db, da));
    return out;
}

inline std::vector<double> random_distribution(std::mt19937_64 &rng, int n) {
    std::uniform_real_distribution<double> uniform(0.05, 1.0);
    std::vector<double> p(n);
    double total = 0;
    for (auto &x : p) total += x = uniform(rng);
    for (auto &x : p) x /= total;
    return p;
}

inline std::vector<std::vector<double>> random_stochastic(std::mt19937_64 &rng, int rows, int cols) {
    std::vector<std::vector<double>> m;
    for (int r = 0; r < rows; r++) m.push_back(random_distribution(rng, cols));
    return m;
}

// Heisenberg action X -> sum K^dagger X K.
inline Mat heisenberg(const std::vector<Mat> &kraus, const Mat &x) {
    Mat out = Mat::Zero(kraus.front().cols(), kraus.front().cols());
    for (const auto &k : kraus) out += k.adjoint() * x * k;
    return out;
}

// Qubit model built from its closed form: U = cos(t/2) I - i sin(t/2) sigma_x,
// hidden isometry U (x) |0> ("first" slot) or |0> (x) U ("second"), copying emission.
struct QubitOracle {
    Mat v_hidden;
    Mat v_emission;
};

inline QubitOracle qubit_model(double theta, bool first_slot) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const Cx mis(0, -s);
    QubitOracle q{Mat::Zero(4, 2), Mat::Zero(4, 2)};
    // columns: image of |0>, |1>
    Cx u00 = c, u10 = mis, u01 = mis, u11 = c;
    if (first_slot) {
        q.v_hidden(0, 0) = u00; q.v_hidden(2, 0) = u10;
        q.v_hidden(0, 1) = u01; q.v_hidden(2, 1) = u11;
    } else {
        q.v_hidden(0, 0) = u00; q.v_hidden(1, 0) = u10;
        q.v_hidden(0, 1) = u01; q.v_hidden(1, 1) = u11;
    }
    q.v_emission(0, 0) = 1;  // |0> -> |0,e0>
    q.v_emission(3, 1) = 1;  // |1> -> |1,e1>
    return q;
}

// Tr(rho F(I)) or Tr(rho G(I)) for a single step with effects (a, b), composed densely.
inline double one_step_cylinder(const QubitOracle &q, const Mat &rho, const Mat &a, const Mat &b, bool conventional) {
    const Mat id = Mat::Identity(2, 2);
    Mat x;
    if (conventional) {
        Mat emitted = q.v_emission.adjoint() * kron(a, b) * q.v_emission;
        x = q.v_hidden.adjoint() * kron(emitted, id) * q.v_hidden;
    } else {
        Mat advanced = q.v_hidden.adjoint() * kron(a, id) * q.v_hidden;
        x = q.v_emission.adjoint() * kron(advanced, b) * q.v_emission;
    }
    return (rho * x).trace().real();
}

// Diagonal cylinder expectation of a classical HMM by enumerating every hidden path.
// alpha[m], beta[m] weight hidden state and output at step m; transitions[m] moves step m to m+1.
inline double path_sum(
    const std::vector<double> &pi, const std::vector<std::vector<std::vector<double>>> &transitions,
    const std::vector<std::vector<std::vector<double>>> &emissions, const std::vector<std::vector<double>> &alpha,
    const std::vector<std::vector<double>> &beta) {
    const int n = pi.size();
    const int steps = alpha.size();
    std::vector<int> path(steps, 0);
    double total = 0;
    while (true) {
        double w = pi[path[0]];
        for (int m = 0; m < steps; m++) {
            double emit = 0;
            for (size_t k = 0; k < beta[m].size(); k++) emit += emissions[m][path[m]][k] * beta[m][k];
            w *= alpha[m][path[m]] * emit;
            if (m + 1 < steps) w *= transitions[m][path[m]][path[m + 1]];
        }
        total += w;
        int pos = 0;
        while (pos < steps && ++path[pos] == n) path[pos++] = 0;
        if (pos == steps) break;
    }
    return total;
}

}  // namespace oracle

#endif
