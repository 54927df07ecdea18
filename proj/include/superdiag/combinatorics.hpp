#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace superdiag {

/* A weakly decreasing sequence of positive integers.  The empty partition
 * (of 0) is valid.  Ordering via operator<=> is plain lexicographic on the
 * parts; canonical enumeration order everywhere else is reverse
 * lexicographic, see RevLexLess.
 */
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0)
                throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const noexcept { return parts_; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

    int size() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    // m_i, the number of parts equal to i
    int multiplicity(int i) const noexcept {
        return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
    }

    Partition conjugate() const {
        std::vector<int> c;
        if (!parts_.empty()) {
            c.resize(parts_.front(), 0);
            for (int p : parts_)
                for (int i = 0; i < p; ++i) ++c[i];
        }
        Partition r;
        r.parts_ = std::move(c);
        return r;
    }

    // Comma-separated parts, "-" for the empty partition.
    std::string to_string() const {
        if (parts_.empty()) return "-";
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    static Partition parse(std::string_view text) {
        auto trim = [](std::string_view v) {
            while (!v.empty() && (v.front() == ' ' || v.front() == '(')) v.remove_prefix(1);
            while (!v.empty() && (v.back() == ' ' || v.back() == ')')) v.remove_suffix(1);
            return v;
        };
        text = trim(text);
        if (text == "-" || text.empty()) return Partition{};
        std::vector<int> parts;
        while (!text.empty()) {
            auto comma = text.find(',');
            auto tok = trim(text.substr(0, comma));
            if (tok.empty()) throw std::invalid_argument("malformed partition string");
            int v = 0;
            for (char ch : tok) {
                if (ch < '0' || ch > '9') throw std::invalid_argument("malformed partition string");
                v = v * 10 + (ch - '0');
            }
            parts.push_back(v);
            if (comma == std::string_view::npos) break;
            text.remove_prefix(comma + 1);
        }
        return Partition(std::move(parts));
    }

    friend auto operator<=>(const Partition&, const Partition&) = default;
    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

// Orders partitions reverse lexicographically: (3) < (2,1) < (1,1,1).
struct RevLexLess {
    bool operator()(const Partition& a, const Partition& b) const { return a > b; }
};

template <class V>
using PartitionMap = std::map<Partition, V, RevLexLess>;

/// All partitions of n in reverse lexicographic order.
inline std::vector<Partition> partitions_of(int n) {
    if (n < 0) throw std::invalid_argument("partitions_of: negative size");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

/// Centralizer order prod_i m_i! i^{m_i}.
inline std::int64_t z_mu(const Partition& mu) {
    std::int64_t z = 1;
    if (mu.empty()) return z;
    for (int i = 1; i <= mu[0]; ++i) {
        int m = mu.multiplicity(i);
        for (int k = 1; k <= m; ++k) z *= static_cast<std::int64_t>(k) * i;
    }
    return z;
}

inline std::int64_t factorial(int n) {
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// lambda dominates nu (both of the same size).
inline bool dominates(const Partition& lambda, const Partition& nu) {
    int a = 0, b = 0;
    std::size_t len = std::max(lambda.length(), nu.length());
    for (std::size_t i = 0; i < len; ++i) {
        a += lambda[i];
        b += nu[i];
        if (a < b) return false;
    }
    return true;
}

/// Number of standard Young tableaux of shape lambda (hook length formula).
inline std::int64_t syt_count(const Partition& lambda) {
    const Partition conj = lambda.conjugate();
    // n! / prod hooks, computed with cancellation on 128-bit to stay exact for moderate n
    __int128 num = 1;
    for (int i = 2; i <= lambda.size(); ++i) num *= i;
    __int128 den = 1;
    for (std::size_t r = 0; r < lambda.length(); ++r)
        for (int c = 0; c < lambda[r]; ++c)
            den *= (lambda[r] - c - 1) + (conj[c] - static_cast<int>(r) - 1) + 1;
    return static_cast<std::int64_t>(num / den);
}

/* Permutation of {1..n} in one-line notation: images[i-1] = sigma(i). */
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<char> seen(images_.size() + 1, 0);
        for (int v : images_) {
            if (v < 1 || v > static_cast<int>(images_.size()) || seen[v])
                throw std::invalid_argument("not a permutation in one-line notation");
            seen[v] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 1);
        return Permutation(std::move(im));
    }

    int n() const noexcept { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_.at(i - 1); }
    const std::vector<int>& images() const noexcept { return images_; }

    // (this * other)(i) = this(other(i))
    Permutation compose(const Permutation& other) const {
        if (other.n() != n()) throw std::invalid_argument("compose: size mismatch");
        std::vector<int> im(images_.size());
        for (int i = 1; i <= n(); ++i) im[i - 1] = (*this)(other(i));
        return Permutation(std::move(im));
    }

    Permutation inverse() const {
        std::vector<int> im(images_.size());
        for (int i = 1; i <= n(); ++i) im[(*this)(i) - 1] = i;
        return Permutation(std::move(im));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

inline Partition cycle_type(const Permutation& sigma) {
    std::vector<int> lens;
    std::vector<char> seen(sigma.n() + 1, 0);
    for (int i = 1; i <= sigma.n(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = sigma(j)) {
            seen[j] = 1;
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return Partition(std::move(lens));
}

/// Canonical permutation of cycle type mu: cycles in decreasing length on
/// consecutive letters, e.g. (3,1) -> (1 2 3)(4).
inline Permutation cycle_representative(const Partition& mu) {
    std::vector<int> im(mu.size());
    int start = 1;
    for (int len : mu.parts()) {
        for (int k = 0; k < len; ++k)
            im[start + k - 1] = start + (k + 1) % len;
        start += len;
    }
    return Permutation(std::move(im));
}

namespace detail {

// Beta-set form of a partition with a fixed number of beads.
inline std::vector<int> beta_set(const Partition& lambda, std::size_t beads) {
    std::vector<int> beta(beads);
    for (std::size_t i = 0; i < beads; ++i)
        beta[i] = lambda[i] + static_cast<int>(beads - 1 - i);
    return beta;  // strictly decreasing
}

inline int mn_rec(std::vector<int>& beta, const std::vector<int>& mu, std::size_t idx,
                  std::map<std::pair<std::vector<int>, std::size_t>, int>& memo) {
    if (idx == mu.size()) return 1;
    auto key = std::make_pair(beta, idx);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const int r = mu[idx];
    int total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        int b = beta[i];
        int target = b - r;
        if (target < 0) continue;
        if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        // height of the border strip = beads strictly between target and b
        int between = 0;
        for (int v : beta)
            if (v > target && v < b) ++between;
        std::vector<int> next = beta;
        next[i] = target;
        std::sort(next.rbegin(), next.rend());
        int sub = mn_rec(next, mu, idx + 1, memo);
        total += (between % 2 ? -sub : sub);
    }
    memo.emplace(std::move(key), total);
    return total;
}

}  // namespace detail

/// Irreducible character value chi^lambda(mu) by the Murnaghan-Nakayama rule.
inline std::int64_t mn_character(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size())
        throw std::invalid_argument("mn_character: |lambda| != |mu|");
    std::map<std::pair<std::vector<int>, std::size_t>, int> memo;
    auto beta = detail::beta_set(lambda, lambda.length());
    return detail::mn_rec(beta, mu.parts(), 0, memo);
}

/// Number of SSYT of shape lambda and content nu.
inline std::int64_t kostka(const Partition& lambda, const Partition& nu) {
    if (lambda.size() != nu.size())
        throw std::invalid_argument("kostka: |lambda| != |nu|");
    // Peel off the largest letter as a horizontal strip, repeatedly.
    std::map<std::pair<std::vector<int>, std::size_t>, std::int64_t> memo;
    auto rec = [&](auto&& self, std::vector<int> shape, std::size_t letters) -> std::int64_t {
        while (!shape.empty() && shape.back() == 0) shape.pop_back();
        if (letters == 0) return shape.empty() ? 1 : 0;
        auto key = std::make_pair(shape, letters);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const int k = nu[letters - 1];
        std::int64_t total = 0;
        // choose removal counts r_i <= shape[i] - shape[i+1], summing to k
        std::vector<int> cur = shape;
        auto place = [&](auto&& pself, std::size_t row, int left) -> void {
            if (row == cur.size()) {
                if (left == 0) total += self(self, cur, letters - 1);
                return;
            }
            int below = row + 1 < shape.size() ? shape[row + 1] : 0;
            int cap = std::min(left, shape[row] - below);
            for (int r = 0; r <= cap; ++r) {
                cur[row] = shape[row] - r;
                pself(pself, row + 1, left - r);
            }
            cur[row] = shape[row];
        };
        place(place, 0, k);
        memo.emplace(std::move(key), total);
        return total;
    };
    return rec(rec, lambda.parts(), nu.length());
}

/* Character table chi^lambda(mu) for all lambda, mu |- n, indexed in
 * reverse lexicographic order.  Tables are memoized per n.
 */
class CharacterTable {
public:
    explicit CharacterTable(int n) : n_(n), parts_(partitions_of(n)) {
        table_.resize(parts_.size() * parts_.size());
        for (std::size_t i = 0; i < parts_.size(); ++i)
            for (std::size_t j = 0; j < parts_.size(); ++j)
                table_[i * parts_.size() + j] = mn_character(parts_[i], parts_[j]);
    }

    int n() const noexcept { return n_; }
    const std::vector<Partition>& partitions() const noexcept { return parts_; }

    std::size_t index_of(const Partition& p) const {
        auto it = std::lower_bound(parts_.begin(), parts_.end(), p, RevLexLess{});
        if (it == parts_.end() || *it != p) throw std::out_of_range("partition not in table");
        return static_cast<std::size_t>(it - parts_.begin());
    }

    std::int64_t at(std::size_t lambda_idx, std::size_t mu_idx) const {
        return table_[lambda_idx * parts_.size() + mu_idx];
    }
    std::int64_t operator()(const Partition& lambda, const Partition& mu) const {
        return at(index_of(lambda), index_of(mu));
    }

    static std::shared_ptr<const CharacterTable> get(int n) {
        static std::shared_mutex mutex;
        static std::map<int, std::shared_ptr<const CharacterTable>> cache;
        {
            std::shared_lock lock(mutex);
            if (auto it = cache.find(n); it != cache.end()) return it->second;
        }
        std::unique_lock lock(mutex);
        auto& slot = cache[n];
        if (!slot) slot = std::make_shared<const CharacterTable>(n);
        return slot;
    }

private:
    int n_;
    std::vector<Partition> parts_;
    std::vector<std::int64_t> table_;
};

}  // namespace superdiag
