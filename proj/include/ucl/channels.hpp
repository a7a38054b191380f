#pragma once

#include <cstdint>
#include <vector>

#include "ucl/matrix.hpp"
#include "ucl/tensor.hpp"

namespace ucl {

/// An operator together with the tensor-factor layout it lives on.
struct LabeledOperator {
    ComplexMatrix mat;
    FactorSpace space;
};

/// Deterministic random stream: identical (seed, stream_id) pairs reproduce
/// identical sample sequences on every platform (xoshiro256++ seeded through
/// splitmix64; Box-Muller normals).
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Standard normal.
    double gaussian();

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_[4];
    double cached_gaussian_ = 0.0;
    bool has_cached_ = false;
};

/// Unnormalized maximally entangled vector, one sum_i |ii> per slot, in the
/// interleaved K1,H1,...,Kn,Hn layout. Squared norm d^n_slots.
ComplexMatrix max_entangled(int d, int n_slots);

/// Choi operator of a unitary: rank one, trace d, PSD. Lives on K1,H1.
LabeledOperator choi(const ComplexMatrix& u, int slot = 1, double unitary_tol = 1e-10);

/// Haar-random unitary via complex Ginibre + QR with R-diagonal phase fix.
/// When special_unitary is set the determinant is corrected to 1 (a global
/// phase, irrelevant to any channel built from the sample).
ComplexMatrix haar_unitary(int d, RngStream& rng, bool special_unitary = true);

/// Gram matrix of the n! permutation operators on (C^d)^{tensor n}:
/// G(sigma,tau) = d^(cycles(sigma^-1 tau)).
ComplexMatrix permutation_gram(int n, int d);

/// Exact Haar average of conjugation by I_K (x) V^{tensor n}: the
/// Hilbert-Schmidt projection onto span{ B (x) W_sigma }, computed with the
/// permutation Gram pseudoinverse. x must be square on K (x) H with
/// dim H = d^n; the H factors are the trailing ones. Trace preserving and
/// idempotent.
ComplexMatrix twirl_last_factors(const ComplexMatrix& x, std::size_t k_dim, int n, int d,
                                 double pinv_tol = 1e-10);

/// Twirl of an operator given in the interleaved layout; returns the result
/// in the same layout. All n slots must have dimension d.
LabeledOperator twirl(const LabeledOperator& x, int n, int d);

/// M1 on the first n slots: tensor power of the identity Choi operator,
/// rank one, trace d^n. Interleaved layout. Serves as its own partials:
/// M1^(k) = m1(k, d).
LabeledOperator m1(int n, int d);

/// M2 on the first n slots: exact twirl of m1. PSD, trace d^n. Partials via
/// m2(k, d).
LabeledOperator m2(int n, int d);

/// Choi operator of the joint input channels: n1 slots of u1 followed by n2
/// slots of u2, interleaved layout.
LabeledOperator input_choi(const ComplexMatrix& u1, const ComplexMatrix& u2, int n1, int n2);

/// Haar averaged state of n1+n2 identical copies: P^sym/(d_sym) on
/// (C^d)^{tensor (n1+n2)} (factors labelled H1..H_{n1+n2}).
LabeledOperator rho1(int n1, int n2, int d);

/// Product of the two independently averaged copy blocks.
LabeledOperator rho2(int n1, int n2, int d);

}  // namespace ucl
