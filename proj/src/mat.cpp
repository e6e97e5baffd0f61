#include "refill/mat.hpp"

#include <cassert>

namespace refill {

// ikj order so the inner loop is a contiguous axpy over rows of B.

void mat_mul(ConstMatView a, ConstMatView b, MatView c, bool accumulate) {
    assert(a.cols == b.rows && a.rows == c.rows && b.cols == c.cols);
    const int m = a.rows, k = a.cols, n = b.cols;
    for (int i = 0; i < m; ++i) {
        double* ci = c.row(i);
        if (!accumulate)
            for (int j = 0; j < n; ++j) ci[j] = 0.0;
        const double* ai = a.row(i);
        for (int p = 0; p < k; ++p) {
            const double aip = ai[p];
            if (aip == 0.0) continue;
            const double* bp = b.row(p);
            for (int j = 0; j < n; ++j) ci[j] += aip * bp[j];
        }
    }
}

void mat_mul_tn(ConstMatView a, ConstMatView b, MatView c, bool accumulate) {
    assert(a.rows == b.rows && a.cols == c.rows && b.cols == c.cols);
    const int k = a.rows, m = a.cols, n = b.cols;
    if (!accumulate)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) c(i, j) = 0.0;
    for (int p = 0; p < k; ++p) {
        const double* ap = a.row(p);
        const double* bp = b.row(p);
        for (int i = 0; i < m; ++i) {
            const double api = ap[i];
            if (api == 0.0) continue;
            double* ci = c.row(i);
            for (int j = 0; j < n; ++j) ci[j] += api * bp[j];
        }
    }
}

void mat_mul_nt(ConstMatView a, ConstMatView b, MatView c, bool accumulate) {
    assert(a.cols == b.cols && a.rows == c.rows && b.rows == c.cols);
    const int m = a.rows, k = a.cols, n = b.rows;
    for (int i = 0; i < m; ++i) {
        const double* ai = a.row(i);
        double* ci = c.row(i);
        for (int j = 0; j < n; ++j) {
            const double* bj = b.row(j);
            double s = accumulate ? ci[j] : 0.0;
            for (int p = 0; p < k; ++p) s += ai[p] * bj[p];
            ci[j] = s;
        }
    }
}

}  // namespace refill
