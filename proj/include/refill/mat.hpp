#pragma once

#include <cstddef>
#include <vector>

namespace refill {

// Minimal dense row-major matrix; just enough for a two-layer network.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    double* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
    const double* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }

    void zero() { std::fill(a.begin(), a.end(), 0.0); }
};

// Non-owning views over row-major storage (e.g. slices of a flat
// parameter buffer).
struct MatView {
    double* a = nullptr;
    int rows = 0;
    int cols = 0;

    MatView() = default;
    MatView(double* p, int r, int c) : a(p), rows(r), cols(c) {}
    MatView(Mat& m) : a(m.a.data()), rows(m.rows), cols(m.cols) {}  // NOLINT: implicit by design

    double& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
    double* row(int i) const { return a + static_cast<std::size_t>(i) * cols; }
};

struct ConstMatView {
    const double* a = nullptr;
    int rows = 0;
    int cols = 0;

    ConstMatView() = default;
    ConstMatView(const double* p, int r, int c) : a(p), rows(r), cols(c) {}
    ConstMatView(const Mat& m) : a(m.a.data()), rows(m.rows), cols(m.cols) {}      // NOLINT
    ConstMatView(const MatView& m) : a(m.a), rows(m.rows), cols(m.cols) {}         // NOLINT

    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
    const double* row(int i) const { return a + static_cast<std::size_t>(i) * cols; }
};

// C (+)= A * B           a: m*k, b: k*n, c: m*n
void mat_mul(ConstMatView a, ConstMatView b, MatView c, bool accumulate = false);
// C (+)= A^T * B         a: k*m, b: k*n, c: m*n
void mat_mul_tn(ConstMatView a, ConstMatView b, MatView c, bool accumulate = false);
// C (+)= A * B^T         a: m*k, b: n*k, c: m*n
void mat_mul_nt(ConstMatView a, ConstMatView b, MatView c, bool accumulate = false);

}  // namespace refill
