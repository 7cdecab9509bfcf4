#include "mgraph/svd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <thread>

#include "mgraph/graph.hpp"

namespace mgraph {

namespace {

void parallelFor(int begin, int end, const std::function<void(int, int)>& chunk) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    int nthreads = std::max(1, std::min(hw, 4));
    int span = end - begin;
    if (span < 64 || nthreads == 1) {
        chunk(begin, end);
        return;
    }
    std::vector<std::thread> pool;
    int step = (span + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        int lo = begin + t * step;
        int hi = std::min(end, lo + step);
        if (lo >= hi) break;
        pool.emplace_back(chunk, lo, hi);
    }
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<double> jacobiSingularValues(const Matrix& a, double tol, int maxSweeps) {
    int n = a.rows, m = a.cols;
    // columns stored contiguously
    std::vector<std::vector<double>> col(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) col[static_cast<size_t>(j)][static_cast<size_t>(i)] = a.at(i, j);

    auto dot = [n](const std::vector<double>& x, const std::vector<double>& y) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += x[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
        return s;
    };

    std::vector<double> sq(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) sq[static_cast<size_t>(j)] = dot(col[static_cast<size_t>(j)], col[static_cast<size_t>(j)]);

    for (int sweep = 0; sweep < maxSweeps; ++sweep) {
        double offMass = 0.0, diagMass = 0.0;
        for (int p = 0; p < m; ++p) diagMass += sq[static_cast<size_t>(p)] * sq[static_cast<size_t>(p)];
        for (int p = 0; p < m - 1; ++p) {
            for (int q = p + 1; q < m; ++q) {
                double app = sq[static_cast<size_t>(p)], aqq = sq[static_cast<size_t>(q)];
                if (app == 0.0 && aqq == 0.0) continue;
                double apq = dot(col[static_cast<size_t>(p)], col[static_cast<size_t>(q)]);
                offMass += 2.0 * apq * apq;
                if (apq == 0.0) continue;
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                auto& cp = col[static_cast<size_t>(p)];
                auto& cq = col[static_cast<size_t>(q)];
                for (int i = 0; i < n; ++i) {
                    double xp = cp[static_cast<size_t>(i)], xq = cq[static_cast<size_t>(i)];
                    cp[static_cast<size_t>(i)] = c * xp - s * xq;
                    cq[static_cast<size_t>(i)] = s * xp + c * xq;
                }
                sq[static_cast<size_t>(p)] = dot(cp, cp);
                sq[static_cast<size_t>(q)] = dot(cq, cq);
            }
        }
        double total = std::sqrt(diagMass + offMass);
        if (total == 0.0 || std::sqrt(offMass) <= tol * total) break;
        if (sweep + 1 == maxSweeps) fail(ErrorCode::NoConvergence, "one-sided Jacobi did not converge");
    }

    std::vector<double> sv(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) sv[static_cast<size_t>(j)] = std::sqrt(std::max(0.0, sq[static_cast<size_t>(j)]));
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

std::vector<double> symmetricEigenvalues(Matrix s, int maxSweeps) {
    int n = s.rows;
    for (int sweep = 0; sweep < maxSweeps; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (int p = 0; p < n; ++p) {
            diag += s.at(p, p) * s.at(p, p);
            for (int q = p + 1; q < n; ++q) off += 2.0 * s.at(p, q) * s.at(p, q);
        }
        if (off <= 1e-30 * std::max(1e-300, diag) || off == 0.0) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = s.at(p, q);
                if (apq == 0.0) continue;
                double app = s.at(p, p), aqq = s.at(q, q);
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double sn = t * c;
                for (int i = 0; i < n; ++i) {
                    double xp = s.at(i, p), xq = s.at(i, q);
                    s.at(i, p) = c * xp - sn * xq;
                    s.at(i, q) = sn * xp + c * xq;
                }
                for (int i = 0; i < n; ++i) {
                    double xp = s.at(p, i), xq = s.at(q, i);
                    s.at(p, i) = c * xp - sn * xq;
                    s.at(q, i) = sn * xp + c * xq;
                }
            }
        }
        if (sweep + 1 == maxSweeps) fail(ErrorCode::NoConvergence, "Jacobi eigensolver did not converge");
    }
    std::vector<double> ev(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = s.at(i, i);
    std::sort(ev.rbegin(), ev.rend());
    return ev;
}

namespace {

// Z = A * Q (Q is n x m row-major)
void multiply(const Matrix& a, const std::vector<double>& q, int m, std::vector<double>& z) {
    int n = a.rows, k = a.cols;
    z.assign(static_cast<size_t>(n) * static_cast<size_t>(m), 0.0);
    parallelFor(0, n, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) {
            double* zi = &z[static_cast<size_t>(i) * static_cast<size_t>(m)];
            const double* ai = &a.data[static_cast<size_t>(i) * static_cast<size_t>(a.cols)];
            for (int j = 0; j < k; ++j) {
                double aij = ai[j];
                if (aij == 0.0) continue;
                const double* qj = &q[static_cast<size_t>(j) * static_cast<size_t>(m)];
                for (int c = 0; c < m; ++c) zi[c] += aij * qj[c];
            }
        }
    });
}

// Z = A^T * Y
void multiplyT(const Matrix& a, const std::vector<double>& y, int m, std::vector<double>& z) {
    int n = a.rows, k = a.cols;
    z.assign(static_cast<size_t>(k) * static_cast<size_t>(m), 0.0);
    // accumulate per thread then reduce to keep determinism
    int hw = std::max(1, std::min(static_cast<int>(std::thread::hardware_concurrency()), 4));
    std::vector<std::vector<double>> partial(static_cast<size_t>(hw));
    int step = (n + hw - 1) / hw;
    std::vector<std::thread> pool;
    for (int t = 0; t < hw; ++t) {
        int lo = t * step, hi = std::min(n, lo + step);
        if (lo >= hi) break;
        partial[static_cast<size_t>(t)].assign(z.size(), 0.0);
        pool.emplace_back([&, t, lo, hi]() {
            auto& acc = partial[static_cast<size_t>(t)];
            for (int i = lo; i < hi; ++i) {
                const double* ai = &a.data[static_cast<size_t>(i) * static_cast<size_t>(a.cols)];
                const double* yi = &y[static_cast<size_t>(i) * static_cast<size_t>(m)];
                for (int j = 0; j < k; ++j) {
                    double aij = ai[j];
                    if (aij == 0.0) continue;
                    double* zj = &acc[static_cast<size_t>(j) * static_cast<size_t>(m)];
                    for (int c = 0; c < m; ++c) zj[c] += aij * yi[c];
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& acc : partial)
        if (!acc.empty())
            for (size_t i = 0; i < z.size(); ++i) z[i] += acc[i];
}

// modified Gram-Schmidt on the m columns of Q (n x m row-major)
void orthonormalize(std::vector<double>& q, int n, int m) {
    for (int j = 0; j < m; ++j) {
        for (int prev = 0; prev < j; ++prev) {
            double d = 0.0;
            for (int i = 0; i < n; ++i)
                d += q[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(prev)] *
                     q[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)];
            for (int i = 0; i < n; ++i)
                q[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)] -=
                    d * q[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(prev)];
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            double v = q[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)];
            norm += v * v;
        }
        norm = std::sqrt(norm);
        double inv = norm > 1e-200 ? 1.0 / norm : 0.0;
        for (int i = 0; i < n; ++i) q[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)] *= inv;
    }
}

std::vector<double> subspaceSingularValues(const Matrix& a, int count, double tol) {
    int n = a.rows;
    int m = std::min(n, std::max(2 * count + 12, 32));
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> q(static_cast<size_t>(n) * static_cast<size_t>(m));
    for (double& v : q) v = gauss(rng);
    orthonormalize(q, n, m);

    std::vector<double> y, z;
    std::vector<double> prev(static_cast<size_t>(count), std::numeric_limits<double>::infinity());
    int maxIters = 600;
    for (int iter = 0; iter < maxIters; ++iter) {
        multiply(a, q, m, y);
        multiplyT(a, y, m, z);  // z = A^T A q
        // Ritz values from T = Q^T Z (Q orthonormal)
        Matrix t(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                double s = 0.0;
                for (int i = 0; i < n; ++i)
                    s += q[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(r)] *
                         z[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(c)];
                t.at(r, c) = s;
            }
        // symmetrize against roundoff
        for (int r = 0; r < m; ++r)
            for (int c = r + 1; c < m; ++c) {
                double s = 0.5 * (t.at(r, c) + t.at(c, r));
                t.at(r, c) = t.at(c, r) = s;
            }
        std::vector<double> ritz = symmetricEigenvalues(t);
        std::vector<double> sv(static_cast<size_t>(count));
        for (int i = 0; i < count; ++i) sv[static_cast<size_t>(i)] = std::sqrt(std::max(0.0, ritz[static_cast<size_t>(i)]));
        double worst = 0.0;
        for (int i = 0; i < count; ++i)
            worst = std::max(worst, std::fabs(sv[static_cast<size_t>(i)] - prev[static_cast<size_t>(i)]));
        if (worst <= tol * std::max(sv[0], 1e-300) && iter >= 3) return sv;
        prev = sv;
        q = z;
        orthonormalize(q, n, m);
    }
    fail(ErrorCode::NoConvergence, "subspace iteration did not converge");
}

}  // namespace

std::vector<double> topSingularValues(const Matrix& a, int count, double tol, int jacobiLimit) {
    count = std::min(count, std::min(a.rows, a.cols));
    if (count <= 0) return {};
    if (a.cols <= jacobiLimit) {
        std::vector<double> sv = jacobiSingularValues(a);
        sv.resize(static_cast<size_t>(count));
        return sv;
    }
    return subspaceSingularValues(a, count, tol);
}

double spectralNorm(const Matrix& a) {
    if (a.cols <= 320) return jacobiSingularValues(a).front();
    return topSingularValues(a, 1).front();
}

}  // namespace mgraph
