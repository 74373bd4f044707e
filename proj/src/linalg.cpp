#include "subdiff/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace subdiff::linalg {

void sym_tridiag_eigen(std::vector<double>& diag, std::vector<double>& off,
                       std::vector<double>& first_row) {
    const int n = static_cast<int>(diag.size());
    first_row.assign(n, 0.0);
    if (n == 0) return;
    first_row[0] = 1.0;
    if (n == 1) return;
    if (static_cast<int>(off.size()) < n - 1)
        throw std::invalid_argument("sym_tridiag_eigen: off-diagonal too short");

    std::vector<double>& d = diag;
    std::vector<double> e(off.begin(), off.begin() + (n - 1));
    e.push_back(0.0);
    std::vector<double>& z = first_row;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw std::runtime_error("sym_tridiag_eigen: QL iteration did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    // rotate the tracked first row of the eigenvector matrix
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    // sort eigenvalues ascending, permuting the tracked components alongside
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n), zs(n);
    for (int i = 0; i < n; ++i) {
        ds[i] = d[order[i]];
        zs[i] = z[order[i]];
    }
    d = std::move(ds);
    z = std::move(zs);
}

std::vector<double> solve_tridiag_const(double diag, double off,
                                        const std::vector<double>& rhs) {
    const int n = static_cast<int>(rhs.size());
    std::vector<double> c(n), x(n);
    double beta = diag;
    x[0] = rhs[0] / beta;
    for (int i = 1; i < n; ++i) {
        c[i] = off / beta;
        beta = diag - off * c[i];
        x[i] = (rhs[i] - off * x[i - 1]) / beta;
    }
    for (int i = n - 2; i >= 0; --i) x[i] -= c[i + 1] * x[i + 1];
    return x;
}

DenseLu::DenseLu(std::vector<double> a, int n) : lu_(std::move(a)), piv_(n), n_(n) {
    if (static_cast<int>(lu_.size()) != n * n)
        throw std::invalid_argument("DenseLu: matrix size mismatch");
    for (int k = 0; k < n; ++k) {
        int p = k;
        double pmax = std::abs(lu_[k * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_[i * n + k]);
            if (v > pmax) {
                pmax = v;
                p = i;
            }
        }
        if (pmax == 0.0) throw std::runtime_error("DenseLu: singular matrix");
        piv_[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(lu_[k * n + j], lu_[p * n + j]);
        const double inv = 1.0 / lu_[k * n + k];
        for (int i = k + 1; i < n; ++i) {
            const double f = lu_[i * n + k] * inv;
            lu_[i * n + k] = f;
            for (int j = k + 1; j < n; ++j) lu_[i * n + j] -= f * lu_[k * n + j];
        }
    }
}

std::vector<double> DenseLu::solve(std::vector<double> rhs) const {
    if (static_cast<int>(rhs.size()) != n_)
        throw std::invalid_argument("DenseLu::solve: rhs size mismatch");
    // all row interchanges first; the stored L is in final row order
    for (int k = 0; k < n_; ++k)
        if (piv_[k] != k) std::swap(rhs[k], rhs[piv_[k]]);
    for (int k = 0; k < n_; ++k)
        for (int i = k + 1; i < n_; ++i) rhs[i] -= lu_[i * n_ + k] * rhs[k];
    for (int i = n_ - 1; i >= 0; --i) {
        for (int j = i + 1; j < n_; ++j) rhs[i] -= lu_[i * n_ + j] * rhs[j];
        rhs[i] /= lu_[i * n_ + i];
    }
    return rhs;
}

}  // namespace subdiff::linalg
