#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ucl/matrix.hpp"

namespace ucl {

/// Integer partition: non-increasing positive parts.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int n() const { return n_; }
    int rows() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }

    std::string to_string() const;
    bool operator==(const Partition&) const = default;
    bool operator<(const Partition& other) const { return parts_ < other.parts_; }

  private:
    std::vector<int> parts_;
    int n_ = 0;
};

/// All partitions of n with at most max_rows rows, in lexicographic
/// descending order ([n] first). n must be >= 1.
std::vector<Partition> partitions(int n, int max_rows);

/// Hook-length formula: dimension of the symmetric-group irrep labelled by p.
std::int64_t dim_v(const Partition& p);

/// Hook-content formula: dimension of the SU(d) irrep labelled by p
/// (0 when p has more than d rows).
std::int64_t dim_u(const Partition& p, int d);

/// Murnaghan-Nakayama character value chi_lambda(cycle_type). Exact integer
/// arithmetic; memoized behind an internal synchronized cache.
std::int64_t character(const Partition& lambda, const Partition& cycle_type);

/// Permutation operator on (C^d)^{tensor n} sending |i_1...i_n> to the basis
/// vector with entries rearranged by sigma (one-line notation, 0-based:
/// sigma[j] = image of position j). Unitary; trace = d^(#cycles).
ComplexMatrix perm_operator(const std::vector<int>& sigma, int d);

/// All n! permutations of {0..n-1} in a deterministic order.
std::vector<std::vector<int>> all_permutations(int n);

int cycle_count(const std::vector<int>& sigma);
std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> inverse(const std::vector<int>& sigma);
/// Cycle type of sigma as a partition of n.
Partition cycle_type(const std::vector<int>& sigma);

/// Projector onto the isotypic component of p inside (C^d)^{tensor n}:
/// (dim_v(p)/n!) * sum_sigma chi_p(sigma) W_sigma. Hermitian idempotent with
/// trace dim_u(p,d)*dim_v(p). Throws when dim_u(p,d) = 0.
ComplexMatrix isotypic_projector(const Partition& p, int d);

/// Projector onto the symmetric subspace of (C^d)^{tensor n}; equals the
/// isotypic projector of the single-row partition [n].
ComplexMatrix sym_projector(int n, int d);

/// Dimension of the symmetric subspace: binomial(n+d-1, d-1).
std::int64_t d_sym(int n, int d);

/// gamma_{n,d} = binomial(n+d^2-1, n) = sum over sectors of dim_u^2; the
/// figure controlling the optimal comparison error. Cross-checked against
/// the irrep sum; throws on disagreement.
std::int64_t gamma_factor(int n, int d);

std::int64_t binomial(int n, int k);
std::int64_t factorial(int n);

/// One Schur-Weyl sector: partition label, the two dimensions, and its
/// weight q = dim_u^2 / gamma.
struct IrrepSector {
    Partition partition;
    std::int64_t dim_u;
    std::int64_t dim_v;
    double q;
};

/// Sectors of (C^d)^{tensor n} with dim_u > 0; weights sum to 1.
std::vector<IrrepSector> irrep_sectors(int n, int d);

}  // namespace ucl
