#include "ucl/channels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ucl/eig.hpp"
#include "ucl/symgroup.hpp"

namespace ucl {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// Determinant by Gaussian elimination with partial pivoting; only used for
// the small unitaries handed to the Haar sampler.
cplx determinant(ComplexMatrix a) {
    const std::size_t n = a.rows();
    cplx det(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(a(r, k)) > std::abs(a(pivot, k))) pivot = r;
        }
        if (std::abs(a(pivot, k)) == 0.0) return cplx(0.0, 0.0);
        if (pivot != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pivot, c));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const cplx factor = a(r, k) / a(k, k);
            for (std::size_t c = k; c < n; ++c) {
                a(r, c) -= factor * a(k, c);
            }
        }
    }
    return det;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    std::uint64_t mix = seed ^ (stream_id * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL);
    for (auto& s : state_) {
        s = splitmix64(mix);
    }
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_gaussian_;
    }
    // Box-Muller; u1 shifted into (0,1] to keep the log finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_gaussian_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

ComplexMatrix max_entangled(int d, int n_slots) {
    if (d < 2) {
        throw std::invalid_argument("max_entangled: d must be >= 2");
    }
    if (n_slots < 1) {
        throw std::invalid_argument("max_entangled: n_slots must be >= 1");
    }
    std::vector<cplx> slot(static_cast<std::size_t>(d) * d, cplx(0.0, 0.0));
    for (int i = 0; i < d; ++i) {
        slot[static_cast<std::size_t>(i) * d + i] = cplx(1.0, 0.0);
    }
    ComplexMatrix v = ComplexMatrix::column(slot);
    ComplexMatrix out = v;
    for (int k = 1; k < n_slots; ++k) {
        out = kron(out, v);
    }
    return out;
}

LabeledOperator choi(const ComplexMatrix& u, int slot, double unitary_tol) {
    if (!u.is_square()) {
        throw std::invalid_argument("choi: operator not square");
    }
    const std::size_t d = u.rows();
    const ComplexMatrix uu = u.adjoint() * u;
    if (max_abs_diff(uu, ComplexMatrix::identity(d)) > unitary_tol) {
        throw std::invalid_argument("choi: operator not unitary within tolerance");
    }
    // (I (x) U) |phi+> = sum_i |i> (x) U|i>; component on |i>|a> is U(a, i).
    const std::size_t dim = d * d;
    std::vector<cplx> vec(dim, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t a = 0; a < d; ++a) {
            vec[i * d + a] = u(a, i);
        }
    }
    ComplexMatrix c(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t col = 0; col < dim; ++col) {
            c(r, col) = vec[r] * std::conj(vec[col]);
        }
    }
    FactorSpace space({{{FactorKind::K, slot}, d}, {{FactorKind::H, slot}, d}});
    return {std::move(c), std::move(space)};
}

ComplexMatrix haar_unitary(int d, RngStream& rng, bool special_unitary) {
    if (d < 2) {
        throw std::invalid_argument("haar_unitary: d must be >= 2");
    }
    ComplexMatrix g(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            g(r, c) = cplx(rng.gaussian(), rng.gaussian());
        }
    }
    auto [q, rmat] = qr_decompose(g);
    // Fix the gauge: multiply column j of Q by the phase of R(j,j) so the
    // implicit R diagonal is positive. This makes Q exactly Haar.
    for (int j = 0; j < d; ++j) {
        const cplx rjj = rmat(j, j);
        const double mag = std::abs(rjj);
        const cplx phase = (mag > 0.0) ? rjj / mag : cplx(1.0, 0.0);
        for (int r = 0; r < d; ++r) {
            q(r, j) *= phase;
        }
    }
    if (special_unitary) {
        // Divide out the determinant phase (it lives on the unit circle).
        const cplx det = determinant(q);
        const double mag = std::abs(det);
        if (mag > 0.0) {
            q *= std::pow(det / mag, cplx(-1.0 / d, 0.0));
        }
    }
    return q;
}

ComplexMatrix permutation_gram(int n, int d) {
    const auto perms = all_permutations(n);
    const std::size_t m = perms.size();
    ComplexMatrix g(m, m);
    double dim_pow[32];
    dim_pow[0] = 1.0;
    for (int i = 1; i <= n; ++i) dim_pow[i] = dim_pow[i - 1] * d;
    for (std::size_t a = 0; a < m; ++a) {
        const auto inv_a = inverse(perms[a]);
        for (std::size_t b = 0; b < m; ++b) {
            g(a, b) = cplx(dim_pow[cycle_count(compose(inv_a, perms[b]))], 0.0);
        }
    }
    return g;
}

ComplexMatrix twirl_last_factors(const ComplexMatrix& x, std::size_t k_dim, int n, int d,
                                 double pinv_tol) {
    std::size_t h_dim = 1;
    for (int i = 0; i < n; ++i) h_dim *= static_cast<std::size_t>(d);
    if (!x.is_square() || x.rows() != k_dim * h_dim) {
        throw std::invalid_argument("twirl_last_factors: dimension mismatch");
    }

    const auto perms = all_permutations(n);
    const std::size_t m = perms.size();

    // Index action of W_sigma on the H multi-index: w_map[sigma][b] = b' with
    // W_sigma |b> = |b'>.
    std::vector<std::vector<std::size_t>> w_map(m, std::vector<std::size_t>(h_dim));
    {
        std::vector<int> digits(n), permuted(n);
        for (std::size_t s = 0; s < m; ++s) {
            const auto inv = inverse(perms[s]);
            for (std::size_t b = 0; b < h_dim; ++b) {
                std::size_t rest = b;
                for (int pos = n; pos-- > 0;) {
                    digits[pos] = static_cast<int>(rest % d);
                    rest /= d;
                }
                for (int j = 0; j < n; ++j) permuted[j] = digits[inv[j]];
                std::size_t row = 0;
                for (int j = 0; j < n; ++j) row = row * d + permuted[j];
                w_map[s][b] = row;
            }
        }
    }

    // F_sigma = Tr_H((I (x) W_sigma^dagger) x): the K-operator overlap of x
    // with each permutation.
    std::vector<ComplexMatrix> f(m);
    for (std::size_t s = 0; s < m; ++s) {
        ComplexMatrix fs(k_dim, k_dim);
        for (std::size_t a = 0; a < k_dim; ++a) {
            for (std::size_t ap = 0; ap < k_dim; ++ap) {
                cplx acc(0.0, 0.0);
                for (std::size_t b = 0; b < h_dim; ++b) {
                    // W_sigma^dagger row b picks x row (a, W_sigma b).
                    acc += x(a * h_dim + w_map[s][b], ap * h_dim + b);
                }
                fs(a, ap) = acc;
            }
        }
        f[s] = std::move(fs);
    }

    // Solve B = G^+ F with the Gram pseudoinverse (the W_sigma are linearly
    // dependent once n exceeds d).
    const ComplexMatrix gram = permutation_gram(n, d);
    const EigResult ge = herm_eig(gram);
    const double cutoff = pinv_tol * std::max(1.0, ge.values.empty() ? 0.0 : ge.values.front());
    ComplexMatrix gpinv(m, m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            cplx acc(0.0, 0.0);
            for (std::size_t k = 0; k < m; ++k) {
                if (ge.values[k] > cutoff) {
                    acc += ge.vectors(r, k) * (1.0 / ge.values[k]) * std::conj(ge.vectors(c, k));
                }
            }
            gpinv(r, c) = acc;
        }
    }

    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t t = 0; t < m; ++t) {
        ComplexMatrix bt(k_dim, k_dim);
        for (std::size_t s = 0; s < m; ++s) {
            const cplx w = gpinv(t, s);
            if (std::abs(w) == 0.0) continue;
            for (std::size_t i = 0; i < k_dim * k_dim; ++i) {
                bt.data()[i] += w * f[s].data()[i];
            }
        }
        // out += B_t (x) W_t, using the permutation structure of W_t.
        for (std::size_t bp = 0; bp < h_dim; ++bp) {
            const std::size_t b = w_map[t][bp];
            for (std::size_t a = 0; a < k_dim; ++a) {
                for (std::size_t ap = 0; ap < k_dim; ++ap) {
                    out(a * h_dim + b, ap * h_dim + bp) += bt(a, ap);
                }
            }
        }
    }
    return out;
}

LabeledOperator twirl(const LabeledOperator& x, int n, int d) {
    const FactorSpace interleaved = FactorSpace::interleaved(n, static_cast<std::size_t>(d));
    if (x.space != interleaved) {
        throw std::invalid_argument("twirl: expected interleaved layout on n slots of dim d");
    }
    std::size_t side = 1;
    for (int i = 0; i < n; ++i) side *= static_cast<std::size_t>(d);

    const ComplexMatrix grouped =
        permute_factors(x.mat, x.space, interleaved_to_grouped_perm(n));
    const ComplexMatrix twirled = twirl_last_factors(grouped, side, n, d);
    const FactorSpace grouped_space = FactorSpace::grouped(n, static_cast<std::size_t>(d));
    ComplexMatrix back = permute_factors(twirled, grouped_space, grouped_to_interleaved_perm(n));
    return {std::move(back), interleaved};
}

LabeledOperator m1(int n, int d) {
    if (n < 1) {
        throw std::invalid_argument("m1: n must be >= 1");
    }
    const ComplexMatrix phi = max_entangled(d, n);
    const std::size_t dim = phi.rows();
    ComplexMatrix mat(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            mat(r, c) = phi(r, 0) * std::conj(phi(c, 0));
        }
    }
    return {std::move(mat), FactorSpace::interleaved(n, static_cast<std::size_t>(d))};
}

LabeledOperator m2(int n, int d) {
    return twirl(m1(n, d), n, d);
}

LabeledOperator input_choi(const ComplexMatrix& u1, const ComplexMatrix& u2, int n1, int n2) {
    if (u1.rows() != u2.rows() || u1.cols() != u2.cols()) {
        throw std::invalid_argument("input_choi: dimension mismatch between u1 and u2");
    }
    const int d = static_cast<int>(u1.rows());
    const LabeledOperator c1 = choi(u1);
    const LabeledOperator c2 = choi(u2);

    ComplexMatrix mat = ComplexMatrix::identity(1);
    std::vector<Factor> factors;
    for (int k = 1; k <= n1 + n2; ++k) {
        mat = kron(mat, k <= n1 ? c1.mat : c2.mat);
        factors.push_back({{FactorKind::K, k}, static_cast<std::size_t>(d)});
        factors.push_back({{FactorKind::H, k}, static_cast<std::size_t>(d)});
    }
    return {std::move(mat), FactorSpace(std::move(factors))};
}

namespace {

FactorSpace state_space(int n, int d) {
    std::vector<Factor> factors;
    for (int k = 1; k <= n; ++k) {
        factors.push_back({{FactorKind::H, k}, static_cast<std::size_t>(d)});
    }
    return FactorSpace(std::move(factors));
}

}  // namespace

LabeledOperator rho1(int n1, int n2, int d) {
    if (n1 < 1 || n2 < 1) {
        throw std::invalid_argument("rho1: n1 and n2 must be >= 1");
    }
    const int n = n1 + n2;
    ComplexMatrix mat = sym_projector(n, d);
    mat *= cplx(1.0 / static_cast<double>(d_sym(n, d)), 0.0);
    return {std::move(mat), state_space(n, d)};
}

LabeledOperator rho2(int n1, int n2, int d) {
    if (n1 < 1 || n2 < 1) {
        throw std::invalid_argument("rho2: n1 and n2 must be >= 1");
    }
    ComplexMatrix a = sym_projector(n1, d);
    a *= cplx(1.0 / static_cast<double>(d_sym(n1, d)), 0.0);
    ComplexMatrix b = sym_projector(n2, d);
    b *= cplx(1.0 / static_cast<double>(d_sym(n2, d)), 0.0);
    return {kron(a, b), state_space(n1 + n2, d)};
}

}  // namespace ucl
