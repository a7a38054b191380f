#include "ucl/symgroup.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace ucl {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) {
            throw std::invalid_argument("Partition: parts must be positive");
        }
        if (i > 0 && parts_[i] > parts_[i - 1]) {
            throw std::invalid_argument("Partition: parts must be non-increasing");
        }
        n_ += parts_[i];
    }
}

std::string Partition::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + "]";
}

namespace {

void enumerate_partitions(int remaining, int max_part, int rows_left, std::vector<int>& stack,
                          std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(stack);
        return;
    }
    if (rows_left == 0) return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        stack.push_back(part);
        enumerate_partitions(remaining - part, part, rows_left - 1, stack, out);
        stack.pop_back();
    }
}

// Hook length of cell (i,j) and its content j-i.
std::vector<std::pair<std::int64_t, std::int64_t>> hooks_and_contents(const Partition& p) {
    const auto& parts = p.parts();
    std::vector<int> conj;  // conjugate partition column heights
    if (!parts.empty()) {
        conj.assign(parts[0], 0);
        for (int row : parts) {
            for (int j = 0; j < row; ++j) conj[j]++;
        }
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (int j = 0; j < parts[i]; ++j) {
            const std::int64_t hook = parts[i] - j + conj[j] - static_cast<std::int64_t>(i) - 1;
            cells.emplace_back(hook, j - static_cast<std::int64_t>(i));
        }
    }
    return cells;
}

// First-column hook lengths ("beta numbers") of a partition with rows rows.
std::vector<int> beta_numbers(const Partition& p, int rows) {
    std::vector<int> beta(rows);
    const auto& parts = p.parts();
    for (int i = 0; i < rows; ++i) {
        const int part = (i < p.rows()) ? parts[i] : 0;
        beta[i] = part + (rows - 1 - i);
    }
    return beta;
}

Partition partition_from_beta(std::vector<int> beta) {
    std::sort(beta.begin(), beta.end(), std::greater<int>());
    const int rows = static_cast<int>(beta.size());
    std::vector<int> parts;
    for (int i = 0; i < rows; ++i) {
        const int part = beta[i] - (rows - 1 - i);
        if (part > 0) parts.push_back(part);
    }
    return Partition(parts);
}

std::int64_t character_rec(const Partition& lambda, const Partition& rho);

std::map<std::pair<std::vector<int>, std::vector<int>>, std::int64_t> g_char_cache;
std::mutex g_char_mutex;

std::int64_t character_rec(const Partition& lambda, const Partition& rho) {
    if (lambda.empty()) return 1;  // rho is empty too at this point

    const auto key = std::make_pair(lambda.parts(), rho.parts());
    {
        std::lock_guard<std::mutex> lock(g_char_mutex);
        auto it = g_char_cache.find(key);
        if (it != g_char_cache.end()) return it->second;
    }

    // Remove one border strip of length rho[0] via beta numbers: replace some
    // beta b by b-r when b-r is unoccupied; the strip height is the number of
    // occupied values strictly between them.
    const int r = rho.parts()[0];
    Partition rho_rest(std::vector<int>(rho.parts().begin() + 1, rho.parts().end()));
    const auto beta = beta_numbers(lambda, lambda.rows());

    std::int64_t total = 0;
    for (std::size_t idx = 0; idx < beta.size(); ++idx) {
        const int b = beta[idx];
        const int target = b - r;
        if (target < 0) continue;
        if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int crossed = 0;
        for (int other : beta) {
            if (other > target && other < b) crossed++;
        }
        std::vector<int> new_beta = beta;
        new_beta[idx] = target;
        const Partition mu = partition_from_beta(std::move(new_beta));
        const std::int64_t sign = (crossed % 2 == 0) ? 1 : -1;
        total += sign * character_rec(mu, rho_rest);
    }

    {
        std::lock_guard<std::mutex> lock(g_char_mutex);
        g_char_cache.emplace(key, total);
    }
    return total;
}

}  // namespace

std::vector<Partition> partitions(int n, int max_rows) {
    if (n < 1) {
        throw std::invalid_argument("partitions: n must be >= 1");
    }
    if (max_rows < 1) {
        throw std::invalid_argument("partitions: max_rows must be >= 1");
    }
    std::vector<Partition> out;
    std::vector<int> stack;
    enumerate_partitions(n, n, max_rows, stack, out);
    return out;
}

std::int64_t dim_v(const Partition& p) {
    if (p.empty()) return 1;
    std::int64_t num = factorial(p.n());
    for (const auto& [hook, content] : hooks_and_contents(p)) {
        (void)content;
        num /= hook;
    }
    return num;
}

std::int64_t dim_u(const Partition& p, int d) {
    if (p.empty()) return 1;
    if (p.rows() > d) return 0;
    std::int64_t num = 1;
    std::int64_t den = 1;
    for (const auto& [hook, content] : hooks_and_contents(p)) {
        num *= d + content;
        den *= hook;
    }
    return num / den;
}

std::int64_t character(const Partition& lambda, const Partition& cycle_type) {
    if (lambda.n() != cycle_type.n()) {
        throw std::invalid_argument("character: partition sizes differ");
    }
    return character_rec(lambda, cycle_type);
}

ComplexMatrix perm_operator(const std::vector<int>& sigma, int d) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> seen(n, false);
    for (int v : sigma) {
        if (v < 0 || v >= n || seen[v]) {
            throw std::invalid_argument("perm_operator: not a permutation");
        }
        seen[v] = true;
    }
    const auto inv = inverse(sigma);

    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) dim *= static_cast<std::size_t>(d);

    ComplexMatrix w(dim, dim);
    std::vector<int> digits(n), permuted(n);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t rest = col;
        for (int pos = n; pos-- > 0;) {
            digits[pos] = static_cast<int>(rest % d);
            rest /= d;
        }
        // output position j carries the input digit at inv[j]
        for (int j = 0; j < n; ++j) permuted[j] = digits[inv[j]];
        std::size_t row = 0;
        for (int j = 0; j < n; ++j) row = row * d + permuted[j];
        w(row, col) = cplx(1.0, 0.0);
    }
    return w;
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(sigma);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
}

int cycle_count(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> visited(n, false);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
        if (visited[i]) continue;
        cycles++;
        int j = i;
        while (!visited[j]) {
            visited[j] = true;
            j = sigma[j];
        }
    }
    return cycles;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    // (a o b)(i) = a(b(i))
    std::vector<int> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i]];
    return out;
}

std::vector<int> inverse(const std::vector<int>& sigma) {
    std::vector<int> inv(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = static_cast<int>(i);
    return inv;
}

Partition cycle_type(const std::vector<int>& sigma) {
    const int n = static_cast<int>(sigma.size());
    std::vector<bool> visited(n, false);
    std::vector<int> lengths;
    for (int i = 0; i < n; ++i) {
        if (visited[i]) continue;
        int len = 0;
        int j = i;
        while (!visited[j]) {
            visited[j] = true;
            j = sigma[j];
            len++;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<int>());
    return Partition(lengths);
}

ComplexMatrix isotypic_projector(const Partition& p, int d) {
    if (dim_u(p, d) == 0) {
        throw std::invalid_argument("isotypic_projector: sector has dimension zero for this d");
    }
    const int n = p.n();
    const double scale = static_cast<double>(dim_v(p)) / static_cast<double>(factorial(n));

    std::map<std::vector<int>, std::int64_t> char_by_type;
    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) dim *= static_cast<std::size_t>(d);
    ComplexMatrix proj(dim, dim);

    for (const auto& sigma : all_permutations(n)) {
        const Partition type = cycle_type(sigma);
        auto it = char_by_type.find(type.parts());
        if (it == char_by_type.end()) {
            it = char_by_type.emplace(type.parts(), character(p, type)).first;
        }
        if (it->second == 0) continue;
        proj += (scale * static_cast<double>(it->second)) * perm_operator(sigma, d);
    }
    return proj;
}

ComplexMatrix sym_projector(int n, int d) {
    if (n < 1) {
        throw std::invalid_argument("sym_projector: n must be >= 1");
    }
    std::size_t dim = 1;
    for (int i = 0; i < n; ++i) dim *= static_cast<std::size_t>(d);
    ComplexMatrix proj(dim, dim);
    const double scale = 1.0 / static_cast<double>(factorial(n));
    for (const auto& sigma : all_permutations(n)) {
        proj += cplx(scale, 0.0) * perm_operator(sigma, d);
    }
    return proj;
}

std::int64_t d_sym(int n, int d) {
    if (n < 0) {
        throw std::invalid_argument("d_sym: n must be >= 0");
    }
    return binomial(n + d - 1, d - 1);
}

std::int64_t gamma_factor(int n, int d) {
    if (n < 1) {
        throw std::invalid_argument("gamma_factor: n must be >= 1");
    }
    const std::int64_t from_binomial = binomial(n + d * d - 1, n);
    std::int64_t from_irreps = 0;
    for (const auto& p : partitions(n, d)) {
        const std::int64_t du = dim_u(p, d);
        from_irreps += du * du;
    }
    if (from_binomial != from_irreps) {
        throw std::runtime_error("gamma_factor: binomial and irrep sum disagree");
    }
    return from_binomial;
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

std::int64_t factorial(int n) {
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

std::vector<IrrepSector> irrep_sectors(int n, int d) {
    const std::int64_t gamma = gamma_factor(n, d);
    std::vector<IrrepSector> sectors;
    for (const auto& p : partitions(n, d)) {
        const std::int64_t du = dim_u(p, d);
        if (du == 0) continue;
        sectors.push_back({p, du, dim_v(p),
                           static_cast<double>(du * du) / static_cast<double>(gamma)});
    }
    return sectors;
}

}  // namespace ucl
