#include "ucl/tensor.hpp"

#include <algorithm>
#include <set>

namespace ucl {

std::string to_string(const FactorLabel& label) {
    return (label.kind == FactorKind::K ? "K" : "H") + std::to_string(label.slot);
}

FactorSpace::FactorSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
    std::set<std::pair<int, int>> seen;
    for (const auto& f : factors_) {
        if (f.dim == 0) {
            throw std::invalid_argument("FactorSpace: zero-dimensional factor " + to_string(f.label));
        }
        auto key = std::make_pair(static_cast<int>(f.label.kind), f.label.slot);
        if (!seen.insert(key).second) {
            throw std::invalid_argument("FactorSpace: duplicate label " + to_string(f.label));
        }
    }
}

FactorSpace FactorSpace::interleaved(int n_slots, std::size_t d) {
    std::vector<Factor> fs;
    fs.reserve(2 * static_cast<std::size_t>(n_slots));
    for (int k = 1; k <= n_slots; ++k) {
        fs.push_back({{FactorKind::K, k}, d});
        fs.push_back({{FactorKind::H, k}, d});
    }
    return FactorSpace(std::move(fs));
}

FactorSpace FactorSpace::grouped(int n_slots, std::size_t d) {
    std::vector<Factor> fs;
    fs.reserve(2 * static_cast<std::size_t>(n_slots));
    for (int k = 1; k <= n_slots; ++k) {
        fs.push_back({{FactorKind::K, k}, d});
    }
    for (int k = 1; k <= n_slots; ++k) {
        fs.push_back({{FactorKind::H, k}, d});
    }
    return FactorSpace(std::move(fs));
}

FactorSpace FactorSpace::inputs(int n_slots, std::size_t d) {
    std::vector<Factor> fs;
    for (int k = 1; k <= n_slots; ++k) {
        fs.push_back({{FactorKind::K, k}, d});
    }
    return FactorSpace(std::move(fs));
}

FactorSpace FactorSpace::outputs(int n_slots, std::size_t d) {
    std::vector<Factor> fs;
    for (int k = 1; k <= n_slots; ++k) {
        fs.push_back({{FactorKind::H, k}, d});
    }
    return FactorSpace(std::move(fs));
}

std::size_t FactorSpace::total_dim() const {
    std::size_t dim = 1;
    for (const auto& f : factors_) {
        dim *= f.dim;
    }
    return dim;
}

std::size_t FactorSpace::index_of(const FactorLabel& label) const {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].label == label) {
            return i;
        }
    }
    throw std::invalid_argument("FactorSpace: unknown label " + to_string(label));
}

bool FactorSpace::contains(const FactorLabel& label) const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [&](const Factor& f) { return f.label == label; });
}

FactorSpace FactorSpace::drop(const std::vector<FactorLabel>& removed) const {
    std::vector<bool> keep(factors_.size(), true);
    for (const auto& label : removed) {
        keep[index_of(label)] = false;
    }
    std::vector<Factor> fs;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (keep[i]) {
            fs.push_back(factors_[i]);
        }
    }
    return FactorSpace(std::move(fs));
}

FactorSpace FactorSpace::permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != factors_.size()) {
        throw std::invalid_argument("FactorSpace::permuted: permutation length mismatch");
    }
    std::vector<Factor> fs(factors_.size());
    std::vector<bool> used(factors_.size(), false);
    for (std::size_t j = 0; j < perm.size(); ++j) {
        if (perm[j] >= factors_.size() || used[perm[j]]) {
            throw std::invalid_argument("FactorSpace::permuted: not a bijection");
        }
        used[perm[j]] = true;
        fs[j] = factors_[perm[j]];
    }
    return FactorSpace(std::move(fs));
}

FactorSpace FactorSpace::joined(const FactorSpace& other) const {
    std::vector<Factor> fs = factors_;
    fs.insert(fs.end(), other.factors_.begin(), other.factors_.end());
    return FactorSpace(std::move(fs));
}

namespace {

// Row-major strides: stride[i] = product of dims after i.
std::vector<std::size_t> strides_of(const std::vector<Factor>& factors) {
    std::vector<std::size_t> s(factors.size(), 1);
    for (std::size_t i = factors.size(); i-- > 1;) {
        s[i - 1] = s[i] * factors[i].dim;
    }
    return s;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& x, const FactorSpace& space,
                            const std::vector<FactorLabel>& traced) {
    const std::size_t total = space.total_dim();
    if (!x.is_square() || x.rows() != total) {
        throw std::invalid_argument("partial_trace: matrix dim does not match factor space");
    }
    std::vector<bool> is_traced(space.count(), false);
    for (const auto& label : traced) {
        is_traced[space.index_of(label)] = true;
    }

    const auto& factors = space.factors();
    const auto strides = strides_of(factors);

    std::vector<std::size_t> kept_idx;
    std::vector<std::size_t> traced_idx;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        (is_traced[i] ? traced_idx : kept_idx).push_back(i);
    }

    std::size_t kept_dim = 1;
    for (auto i : kept_idx) {
        kept_dim *= factors[i].dim;
    }
    std::size_t traced_dim = 1;
    for (auto i : traced_idx) {
        traced_dim *= factors[i].dim;
    }

    // Flat offsets into the original index for every kept and traced multi-index.
    auto offsets = [&](const std::vector<std::size_t>& which, std::size_t count) {
        std::vector<std::size_t> off(count, 0);
        for (std::size_t flat = 0; flat < count; ++flat) {
            std::size_t rest = flat;
            for (std::size_t pos = which.size(); pos-- > 0;) {
                const std::size_t dim = factors[which[pos]].dim;
                off[flat] += (rest % dim) * strides[which[pos]];
                rest /= dim;
            }
        }
        return off;
    };
    const auto kept_off = offsets(kept_idx, kept_dim);
    const auto traced_off = offsets(traced_idx, traced_dim);

    ComplexMatrix out(kept_dim, kept_dim);
    for (std::size_t r = 0; r < kept_dim; ++r) {
        for (std::size_t c = 0; c < kept_dim; ++c) {
            cplx acc(0.0, 0.0);
            for (std::size_t t = 0; t < traced_dim; ++t) {
                acc += x(kept_off[r] + traced_off[t], kept_off[c] + traced_off[t]);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

ComplexMatrix permute_factors(const ComplexMatrix& x, const FactorSpace& space,
                              const std::vector<std::size_t>& perm) {
    const std::size_t total = space.total_dim();
    if (!x.is_square() || x.rows() != total) {
        throw std::invalid_argument("permute_factors: matrix dim does not match factor space");
    }
    const FactorSpace new_space = space.permuted(perm);  // validates bijection

    const auto old_strides = strides_of(space.factors());
    const auto& new_factors = new_space.factors();

    // map[new index] = old index
    std::vector<std::size_t> map(total, 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        std::size_t old = 0;
        for (std::size_t pos = new_factors.size(); pos-- > 0;) {
            const std::size_t dim = new_factors[pos].dim;
            old += (rest % dim) * old_strides[perm[pos]];
            rest /= dim;
        }
        map[flat] = old;
    }

    ComplexMatrix out(total, total);
    for (std::size_t r = 0; r < total; ++r) {
        for (std::size_t c = 0; c < total; ++c) {
            out(r, c) = x(map[r], map[c]);
        }
    }
    return out;
}

std::vector<std::size_t> interleaved_to_grouped_perm(int n_slots) {
    std::vector<std::size_t> perm;
    perm.reserve(2 * static_cast<std::size_t>(n_slots));
    for (int k = 0; k < n_slots; ++k) {
        perm.push_back(2 * static_cast<std::size_t>(k));
    }
    for (int k = 0; k < n_slots; ++k) {
        perm.push_back(2 * static_cast<std::size_t>(k) + 1);
    }
    return perm;
}

std::vector<std::size_t> grouped_to_interleaved_perm(int n_slots) {
    std::vector<std::size_t> perm;
    perm.reserve(2 * static_cast<std::size_t>(n_slots));
    for (int k = 0; k < n_slots; ++k) {
        perm.push_back(static_cast<std::size_t>(k));
        perm.push_back(static_cast<std::size_t>(k) + static_cast<std::size_t>(n_slots));
    }
    return perm;
}

}  // namespace ucl
