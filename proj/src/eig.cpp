#include "ucl/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ucl {

namespace {

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form. On return diag/offdiag hold the tridiagonal; if q is non-null it
// receives the accumulated unitary with a = q * tri * q^dagger.
void tridiagonalize(ComplexMatrix a, std::vector<double>& diag, std::vector<double>& offdiag,
                    ComplexMatrix* q) {
    const std::size_t n = a.rows();
    diag.assign(n, 0.0);
    offdiag.assign(n > 0 ? n - 1 : 0, 0.0);
    if (n == 0) {
        if (q) *q = ComplexMatrix(0, 0);
        return;
    }

    std::vector<std::vector<cplx>> reflectors;  // v for each column k, length n-k-1
    if (q) reflectors.reserve(n);

    std::vector<cplx> v, w;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        v.assign(m, cplx(0.0, 0.0));
        double xnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = a(k + 1 + i, k);
            xnorm2 += std::norm(v[i]);
        }
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm <= 0.0) {
            if (q) reflectors.emplace_back();
            continue;
        }
        const cplx x0 = v[0];
        const cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx(1.0, 0.0);
        const cplx alpha = -phase * xnorm;
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (const auto& vi : v) vnorm2 += std::norm(vi);
        if (vnorm2 <= 0.0) {
            a(k + 1, k) = alpha;
            a(k, k + 1) = std::conj(alpha);
            if (q) reflectors.emplace_back();
            continue;
        }
        const double inv = 1.0 / std::sqrt(vnorm2);
        for (auto& vi : v) vi *= inv;

        // Two-sided update of the trailing block B = a[k+1:, k+1:]:
        // B <- B - 2 v w^+ - 2 w v^+ + 4 (v^+ B v) v v^+   with w = B v.
        w.assign(m, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < m; ++i) {
            cplx acc(0.0, 0.0);
            for (std::size_t j = 0; j < m; ++j) {
                acc += a(k + 1 + i, k + 1 + j) * v[j];
            }
            w[i] = acc;
        }
        cplx vw(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i) vw += std::conj(v[i]) * w[i];
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                a(k + 1 + i, k + 1 + j) += -2.0 * v[i] * std::conj(w[j]) -
                                           2.0 * w[i] * std::conj(v[j]) +
                                           4.0 * vw * v[i] * std::conj(v[j]);
            }
        }
        a(k + 1, k) = alpha;
        a(k, k + 1) = std::conj(alpha);
        for (std::size_t i = 2; i <= m; ++i) {
            a(k + i, k) = cplx(0.0, 0.0);
            a(k, k + i) = cplx(0.0, 0.0);
        }
        if (q) reflectors.push_back(v);
    }

    if (q) {
        // q = P_0 P_1 ... applied to the identity, right to left.
        *q = ComplexMatrix::identity(n);
        for (std::size_t kk = reflectors.size(); kk-- > 0;) {
            const auto& vk = reflectors[kk];
            if (vk.empty()) continue;
            const std::size_t off = kk + 1;
            const std::size_t m = vk.size();
            for (std::size_t c = 0; c < n; ++c) {
                cplx dot(0.0, 0.0);
                for (std::size_t i = 0; i < m; ++i) {
                    dot += std::conj(vk[i]) * (*q)(off + i, c);
                }
                dot *= 2.0;
                for (std::size_t i = 0; i < m; ++i) {
                    (*q)(off + i, c) -= dot * vk[i];
                }
            }
        }
    }

    // Phase normalization: absorb subdiagonal phases into a diagonal unitary
    // so the tridiagonal becomes real with nonnegative off-diagonal.
    cplx t(1.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = a(i, i).real();
        if (i + 1 < n) {
            const cplx e = a(i + 1, i);
            const double mag = std::abs(e);
            offdiag[i] = mag;
            const cplx t_next = (mag > 0.0) ? t * (e / mag) : t;
            if (q) {
                for (std::size_t r = 0; r < n; ++r) {
                    (*q)(r, i + 1) *= t_next;
                }
            }
            t = t_next;
        }
    }
}

// Implicit-shift QL on a real symmetric tridiagonal (EISPACK tql2 lineage).
// If q is non-null its columns are rotated along.
void tql_implicit(std::vector<double>& d, std::vector<double>& e, ComplexMatrix* q) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    std::vector<double> sub(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) sub[i] = e[i];

    const double eps = std::numeric_limits<double>::epsilon();
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(sub[l]));
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                // Negligible against either the local neighbours or the
                // running norm of the whole tridiagonal (EISPACK-style);
                // the local test alone never deflates inside zero blocks.
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(sub[m]) <= eps * dd || std::abs(sub[m]) <= eps * tst1) break;
            }
            if (m != l) {
                if (iter++ == 60) {
                    throw std::runtime_error("herm_eig: QL iteration did not converge");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * sub[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + sub[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * sub[i];
                    const double b = c * sub[i];
                    r = std::hypot(f, g);
                    sub[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        sub[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (q) {
                        const std::size_t rows = q->rows();
                        for (std::size_t k = 0; k < rows; ++k) {
                            const cplx fk = (*q)(k, i + 1);
                            (*q)(k, i + 1) = s * (*q)(k, i) + c * fk;
                            (*q)(k, i) = c * (*q)(k, i) - s * fk;
                        }
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                sub[l] = g;
                sub[m] = 0.0;
            }
        } while (m != l);
    }
}

void require_hermitian(const ComplexMatrix& h, double herm_tol, const char* who) {
    if (!h.is_square()) {
        throw std::invalid_argument(std::string(who) + ": matrix not square");
    }
    if (h.hermiticity_error() > herm_tol) {
        throw std::invalid_argument(std::string(who) + ": matrix not Hermitian within tolerance");
    }
}

}  // namespace

EigResult herm_eig(const ComplexMatrix& h, double herm_tol) {
    require_hermitian(h, herm_tol, "herm_eig");
    std::vector<double> d, e;
    ComplexMatrix q;
    tridiagonalize(h, d, e, &q);
    tql_implicit(d, e, &q);

    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

    EigResult out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = d[order[j]];
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, j) = q(r, order[j]);
        }
    }
    return out;
}

std::vector<double> herm_eigenvalues(const ComplexMatrix& h, double herm_tol) {
    require_hermitian(h, herm_tol, "herm_eigenvalues");
    std::vector<double> d, e;
    tridiagonalize(h, d, e, nullptr);
    tql_implicit(d, e, nullptr);
    std::sort(d.begin(), d.end(), std::greater<double>());
    return d;
}

double min_eigenvalue(const ComplexMatrix& h, double herm_tol) {
    const auto vals = herm_eigenvalues(h, herm_tol);
    if (vals.empty()) {
        throw std::invalid_argument("min_eigenvalue: empty matrix");
    }
    return vals.back();
}

bool is_psd(const ComplexMatrix& h, double tol, double herm_tol) {
    return min_eigenvalue(h, herm_tol) >= -tol;
}

ComplexMatrix herm_fn(const ComplexMatrix& h, const std::function<double(double)>& f,
                      double null_tol) {
    const EigResult eig = herm_eig(h);
    const std::size_t n = eig.values.size();
    std::vector<double> fw(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = eig.values[i];
        if (w < -null_tol) {
            throw std::invalid_argument("herm_fn: negative eigenvalue beyond null tolerance");
        }
        fw[i] = (w < null_tol) ? 0.0 : f(w);
    }
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            cplx acc(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                acc += eig.vectors(r, k) * fw[k] * std::conj(eig.vectors(c, k));
            }
            out(r, c) = acc;
        }
    }
    return out;
}

ComplexMatrix herm_sqrt(const ComplexMatrix& h, double null_tol) {
    return herm_fn(h, [](double w) { return std::sqrt(w); }, null_tol);
}

ComplexMatrix herm_inv_sqrt(const ComplexMatrix& h, double null_tol) {
    return herm_fn(h, [](double w) { return 1.0 / std::sqrt(w); }, null_tol);
}

QrResult qr_decompose(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw std::invalid_argument("qr_decompose: matrix not square");
    }
    const std::size_t n = a.rows();
    ComplexMatrix r = a;
    std::vector<std::vector<cplx>> reflectors(n);

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t m = n - k;
        std::vector<cplx> v(m);
        double xnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = r(k + i, k);
            xnorm2 += std::norm(v[i]);
        }
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm <= 0.0) continue;
        const cplx x0 = v[0];
        const cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx(1.0, 0.0);
        const cplx alpha = -phase * xnorm;
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (const auto& vi : v) vnorm2 += std::norm(vi);
        if (vnorm2 <= 0.0) continue;
        const double inv = 1.0 / std::sqrt(vnorm2);
        for (auto& vi : v) vi *= inv;

        for (std::size_t c = k; c < n; ++c) {
            cplx dot(0.0, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                dot += std::conj(v[i]) * r(k + i, c);
            }
            dot *= 2.0;
            for (std::size_t i = 0; i < m; ++i) {
                r(k + i, c) -= dot * v[i];
            }
        }
        reflectors[k] = std::move(v);
    }

    ComplexMatrix q = ComplexMatrix::identity(n);
    for (std::size_t kk = n; kk-- > 0;) {
        const auto& vk = reflectors[kk];
        if (vk.empty()) continue;
        const std::size_t m = vk.size();
        for (std::size_t c = 0; c < n; ++c) {
            cplx dot(0.0, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                dot += std::conj(vk[i]) * q(kk + i, c);
            }
            dot *= 2.0;
            for (std::size_t i = 0; i < m; ++i) {
                q(kk + i, c) -= dot * vk[i];
            }
        }
    }
    return {std::move(q), std::move(r)};
}

}  // namespace ucl
