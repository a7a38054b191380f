#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ucl/matrix.hpp"

namespace ucl {

/// Tensor factors are the input (K) and output (H) legs of channel slots.
enum class FactorKind { K, H };

struct FactorLabel {
    FactorKind kind;
    int slot;  // 1-based slot index

    bool operator==(const FactorLabel&) const = default;
};

std::string to_string(const FactorLabel& label);

struct Factor {
    FactorLabel label;
    std::size_t dim;

    bool operator==(const Factor&) const = default;
};

/// Ordered tensor-factor layout. The canonical order used throughout is
/// interleaved K1,H1,K2,H2,...; grouped (K...)(H...) layouts are produced
/// via permute_factors only.
class FactorSpace {
  public:
    FactorSpace() = default;
    explicit FactorSpace(std::vector<Factor> factors);

    /// K1,H1,...,Kn,Hn with every factor of dimension d.
    static FactorSpace interleaved(int n_slots, std::size_t d);
    /// K1..Kn,H1..Hn with every factor of dimension d.
    static FactorSpace grouped(int n_slots, std::size_t d);
    /// K1..Kn only.
    static FactorSpace inputs(int n_slots, std::size_t d);
    /// H1..Hn only.
    static FactorSpace outputs(int n_slots, std::size_t d);

    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t count() const { return factors_.size(); }
    std::size_t total_dim() const;

    /// Index of the factor carrying `label`; throws if absent.
    std::size_t index_of(const FactorLabel& label) const;
    bool contains(const FactorLabel& label) const;

    /// Space left after removing the listed factors (original order kept).
    FactorSpace drop(const std::vector<FactorLabel>& removed) const;
    /// Space reordered so that new position j holds old factor perm[j].
    FactorSpace permuted(const std::vector<std::size_t>& perm) const;
    /// Concatenation: this followed by other; labels must stay unique.
    FactorSpace joined(const FactorSpace& other) const;

    bool operator==(const FactorSpace&) const = default;

  private:
    std::vector<Factor> factors_;
};

/// Trace over the listed factors. x must be square with dim equal to the
/// space's total dimension; the result lives on the remaining factors in
/// their original order. Preserves the total trace.
ComplexMatrix partial_trace(const ComplexMatrix& x, const FactorSpace& space,
                            const std::vector<FactorLabel>& traced);

/// Conjugate x by the index permutation sending old factor perm[j] to new
/// position j (perm must be a bijection on factor indices). Spectrum is
/// unchanged; a swap is its own inverse.
ComplexMatrix permute_factors(const ComplexMatrix& x, const FactorSpace& space,
                              const std::vector<std::size_t>& perm);

/// Permutation taking interleaved K1,H1,...,Kn,Hn to grouped K1..Kn,H1..Hn.
std::vector<std::size_t> interleaved_to_grouped_perm(int n_slots);
/// Inverse of the above.
std::vector<std::size_t> grouped_to_interleaved_perm(int n_slots);

}  // namespace ucl
