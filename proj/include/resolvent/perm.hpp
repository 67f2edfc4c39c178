#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "errors.hpp"

namespace resolvent {

// A bijection of {0, ..., n-1}. Text I/O is 1-based cycle notation such as
// "(1 2 3)(4 5)"; the identity prints as "()".
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)])
                throw DomainError("images do not form a bijection");
            seen[static_cast<std::size_t>(v)] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(static_cast<std::size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    // Cycles are 1-based; points not mentioned are fixed.
    static Permutation from_cycles(const std::vector<std::vector<int>>& cycles, int n) {
        std::vector<int> im(static_cast<std::size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        std::vector<bool> used(static_cast<std::size_t>(n), false);
        for (const auto& cyc : cycles) {
            for (std::size_t k = 0; k < cyc.size(); ++k) {
                int a = cyc[k] - 1;
                int b = cyc[(k + 1) % cyc.size()] - 1;
                if (a < 0 || a >= n || b < 0 || b >= n) throw ParseError("cycle entry out of range 1.." + std::to_string(n));
                if (used[static_cast<std::size_t>(a)]) throw ParseError("point repeated in cycle notation");
                used[static_cast<std::size_t>(a)] = true;
                im[static_cast<std::size_t>(a)] = b;
            }
        }
        return Permutation(std::move(im));
    }

    static Permutation parse(std::string_view text, int n) {
        std::vector<std::vector<int>> cycles;
        std::size_t i = 0;
        auto skip = [&] {
            while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
        };
        skip();
        while (i < text.size()) {
            if (text[i] != '(') throw ParseError("expected '(' in cycle string \"" + std::string(text) + "\"");
            ++i;
            std::vector<int> cyc;
            for (;;) {
                skip();
                if (i >= text.size()) throw ParseError("unterminated cycle in \"" + std::string(text) + "\"");
                if (text[i] == ')') {
                    ++i;
                    break;
                }
                std::size_t start = i;
                while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
                if (start == i) throw ParseError("bad character in cycle string \"" + std::string(text) + "\"");
                cyc.push_back(std::stoi(std::string(text.substr(start, i - start))));
            }
            if (!cyc.empty()) cycles.push_back(std::move(cyc));
            skip();
        }
        return from_cycles(cycles, n);
    }

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    std::span<const int> images() const { return images_; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (images_[static_cast<std::size_t>(i)] != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
        return Permutation(std::move(inv));
    }

    // 0-based cycles including fixed points, each starting at its smallest point.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(images_.size(), false);
        for (int i = 0; i < size(); ++i) {
            if (seen[static_cast<std::size_t>(i)]) continue;
            std::vector<int> cyc;
            for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
                seen[static_cast<std::size_t>(j)] = true;
                cyc.push_back(j);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    std::string to_string() const {
        std::string s;
        for (const auto& cyc : cycles()) {
            if (cyc.size() < 2) continue;
            s += '(';
            for (std::size_t k = 0; k < cyc.size(); ++k) {
                if (k) s += ' ';
                s += std::to_string(cyc[k] + 1);
            }
            s += ')';
        }
        return s.empty() ? "()" : s;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

// (a * b)(i) = a(b(i)): apply b first.
inline Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw DomainError("degree mismatch in composition");
    std::vector<int> im(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) im[static_cast<std::size_t>(i)] = a(b(i));
    return Permutation(std::move(im));
}

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (int v : p.images()) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
        return h;
    }
};

enum class Parity { even, odd };

inline int cycle_count(const Permutation& s) { return static_cast<int>(s.cycles().size()); }

inline Parity parity(const Permutation& s) {
    return (s.size() - cycle_count(s)) % 2 == 0 ? Parity::even : Parity::odd;
}

// ---------------------------------------------------------------------------

// A set partition of {0, ..., n-1}; blocks sorted internally and ordered by
// their smallest element. Text form is 1-based, e.g. "{1,2,3}{4}{5}".
class SetPartition {
public:
    SetPartition() = default;
    SetPartition(int n, std::vector<std::vector<int>> blocks) : n_(n), blocks_(std::move(blocks)) {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        int covered = 0;
        for (auto& b : blocks_) {
            if (b.empty()) throw DomainError("empty block in set partition");
            std::sort(b.begin(), b.end());
            for (int v : b) {
                if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
                    throw DomainError("blocks must be disjoint and cover 1.." + std::to_string(n));
                seen[static_cast<std::size_t>(v)] = true;
                ++covered;
            }
        }
        if (covered != n) throw DomainError("blocks must cover 1.." + std::to_string(n));
        std::sort(blocks_.begin(), blocks_.end());
    }

    static SetPartition singletons(int n) {
        std::vector<std::vector<int>> b;
        for (int i = 0; i < n; ++i) b.push_back({i});
        return SetPartition(n, std::move(b));
    }

    // Restricted growth string: rgs[i] = index of the block holding i.
    static SetPartition from_rgs(std::span<const int> rgs) {
        int k = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
        std::vector<std::vector<int>> b(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < rgs.size(); ++i) b[static_cast<std::size_t>(rgs[i])].push_back(static_cast<int>(i));
        return SetPartition(static_cast<int>(rgs.size()), std::move(b));
    }

    // Accepts "{1,2}{3}", "{1 2}{3}" and, when n < 10, "{12}{3}".
    static SetPartition parse(std::string_view text, int n) {
        std::vector<std::vector<int>> blocks;
        std::size_t i = 0;
        while (i < text.size()) {
            if (text[i] == ' ') {
                ++i;
                continue;
            }
            if (text[i] != '{') throw ParseError("expected '{' in partition \"" + std::string(text) + "\"");
            auto close = text.find('}', i);
            if (close == std::string_view::npos) throw ParseError("unterminated block in \"" + std::string(text) + "\"");
            std::string body(text.substr(i + 1, close - i - 1));
            bool separated = body.find_first_of(", ") != std::string::npos;
            std::vector<int> block;
            std::string num;
            auto flush = [&] {
                if (!num.empty()) block.push_back(std::stoi(num) - 1);
                num.clear();
            };
            for (char c : body) {
                if (c >= '0' && c <= '9') {
                    num.push_back(c);
                    if (!separated && n < 10) flush();
                } else if (c == ',' || c == ' ') {
                    flush();
                } else {
                    throw ParseError("bad character in partition \"" + std::string(text) + "\"");
                }
            }
            flush();
            blocks.push_back(std::move(block));
            i = close + 1;
        }
        try {
            return SetPartition(n, std::move(blocks));
        } catch (const DomainError& e) {
            throw ParseError(e.what());
        }
    }

    int size() const { return n_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }

    std::vector<int> rgs() const {
        std::vector<int> r(static_cast<std::size_t>(n_));
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            for (int v : blocks_[b]) r[static_cast<std::size_t>(v)] = static_cast<int>(b);
        return r;
    }

    // Every block of *this lies inside a block of `coarser`.
    bool refines(const SetPartition& coarser) const {
        if (n_ != coarser.n_) throw DomainError("degree mismatch between partitions");
        auto owner = coarser.rgs();
        for (const auto& b : blocks_)
            for (int v : b)
                if (owner[static_cast<std::size_t>(v)] != owner[static_cast<std::size_t>(b.front())]) return false;
        return true;
    }

    // The permutation whose cycles are the blocks (each cycle in increasing order).
    Permutation canonical_permutation() const {
        std::vector<std::vector<int>> cyc;
        for (const auto& b : blocks_) {
            std::vector<int> c;
            for (int v : b) c.push_back(v + 1);
            cyc.push_back(std::move(c));
        }
        return Permutation::from_cycles(cyc, n_);
    }

    bool is_identity_pattern() const { return block_count() == n_; }
    bool is_transposition_pattern() const { return n_ >= 2 && block_count() == n_ - 1; }

    std::string to_string() const {
        std::string s;
        for (const auto& b : blocks_) {
            s += '{';
            for (std::size_t k = 0; k < b.size(); ++k) {
                if (k) s += ',';
                s += std::to_string(b[k] + 1);
            }
            s += '}';
        }
        return s;
    }

    friend bool operator==(const SetPartition&, const SetPartition&) = default;

private:
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
};

inline SetPartition coincidence_partition(const Permutation& s) {
    return SetPartition(s.size(), s.cycles());
}

// Strict coarsening of coincidence patterns.
inline bool height_lt(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) throw DomainError("degree mismatch in height comparison");
    auto ps = coincidence_partition(s);
    auto pt = coincidence_partition(t);
    return ps != pt && ps.refines(pt);
}

// ---------------------------------------------------------------------------
// Chains in the coarsening lattice of set partitions.

struct ChainResult {
    int length = 0;
    std::vector<SetPartition> witness;
};

namespace detail {

// RGS packed 4 bits per point; n <= 16.
using PackedRgs = std::uint64_t;

inline PackedRgs pack(std::span<const int> rgs) {
    PackedRgs key = 0;
    for (std::size_t i = 0; i < rgs.size(); ++i) key |= static_cast<PackedRgs>(rgs[i]) << (4 * i);
    return key;
}

// All restricted growth strings of length n in lexicographic order.
inline std::vector<std::vector<int>> all_rgs(int n) {
    std::vector<std::vector<int>> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
    for (;;) {
        out.push_back(a);
        int i = n - 1;
        while (i > 0 && a[static_cast<std::size_t>(i)] > prefix_max[static_cast<std::size_t>(i - 1)]) --i;
        if (i == 0) break;
        ++a[static_cast<std::size_t>(i)];
        prefix_max[static_cast<std::size_t>(i)] =
            std::max(prefix_max[static_cast<std::size_t>(i - 1)], a[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < n; ++j) {
            a[static_cast<std::size_t>(j)] = 0;
            prefix_max[static_cast<std::size_t>(j)] = prefix_max[static_cast<std::size_t>(i)];
        }
    }
    return out;
}

// Relabel so that blocks appear in order of first occurrence.
inline std::vector<int> canonical_rgs(std::span<const int> labels) {
    std::vector<int> map(labels.size() + 1, -1);
    std::vector<int> out(labels.size());
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto& m = map[static_cast<std::size_t>(labels[i])];
        if (m < 0) m = next++;
        out[i] = m;
    }
    return out;
}

} // namespace detail

// Longest strict-coarsening chain P1 < P2 < ... < Pk with every Pi
// satisfying `allowed` and P1 satisfying `bottom_ok`. Memoized DFS over all
// set partitions; ties resolve to the lexicographically first restricted
// growth strings, so the witness is deterministic.
template <class Allowed, class BottomOk>
ChainResult longest_partition_chain(int n, Allowed&& allowed, BottomOk&& bottom_ok) {
    if (n < 1 || n > 12) throw DomainError("chain search supports 1 <= n <= 12");
    const auto partitions = detail::all_rgs(n);
    std::unordered_map<detail::PackedRgs, std::size_t> index;
    index.reserve(partitions.size() * 2);
    for (std::size_t i = 0; i < partitions.size(); ++i) index.emplace(detail::pack(partitions[i]), i);

    std::vector<char> ok(partitions.size());
    for (std::size_t i = 0; i < partitions.size(); ++i)
        ok[i] = allowed(SetPartition::from_rgs(partitions[i])) ? 1 : 0;

    // coarsenings of a partition with b blocks are indexed by RGS of length b
    std::vector<std::vector<std::vector<int>>> block_merges(static_cast<std::size_t>(n) + 1);
    for (int b = 0; b <= n; ++b) block_merges[static_cast<std::size_t>(b)] = detail::all_rgs(b);

    constexpr int kUnknown = -1;
    std::vector<int> best(partitions.size(), kUnknown);
    std::vector<long> next(partitions.size(), -1);

    // Coarser partitions have fewer blocks, so processing by increasing
    // block count means every coarsening is already resolved.
    std::vector<std::size_t> order(partitions.size());
    std::iota(order.begin(), order.end(), 0);
    auto blocks_of = [&](std::size_t i) {
        return *std::max_element(partitions[i].begin(), partitions[i].end()) + 1;
    };
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return blocks_of(a) < blocks_of(b); });

    std::vector<int> merged(static_cast<std::size_t>(n));
    for (auto i : order) {
        if (!ok[i]) continue;
        const auto& p = partitions[i];
        const int b = blocks_of(i);
        int top = 0;
        long arg = -1;
        for (const auto& m : block_merges[static_cast<std::size_t>(b)]) {
            if (*std::max_element(m.begin(), m.end()) + 1 == b) continue; // not strict
            for (int v = 0; v < n; ++v) merged[static_cast<std::size_t>(v)] = m[static_cast<std::size_t>(p[static_cast<std::size_t>(v)])];
            auto j = index.at(detail::pack(detail::canonical_rgs(merged)));
            if (ok[j] && best[j] > top) {
                top = best[j];
                arg = static_cast<long>(j);
            }
        }
        best[i] = top + 1;
        next[i] = arg;
    }

    ChainResult result;
    long start = -1;
    for (std::size_t i = 0; i < partitions.size(); ++i) {
        if (!ok[i] || !bottom_ok(SetPartition::from_rgs(partitions[i]))) continue;
        if (best[i] > result.length) {
            result.length = best[i];
            start = static_cast<long>(i);
        }
    }
    for (long k = start; k >= 0; k = next[static_cast<std::size_t>(k)])
        result.witness.push_back(SetPartition::from_rgs(partitions[static_cast<std::size_t>(k)]));
    return result;
}

// Longest chain of coincidence patterns above a bottom element that is
// neither the identity nor a transposition; with even_only every element must
// be realizable by an even permutation (n - #blocks even).
inline ChainResult max_chain(int n, bool even_only) {
    if (n < 3) throw DomainError("max_chain needs n >= 3");
    return longest_partition_chain(
        n,
        [&](const SetPartition& p) { return !even_only || (n - p.block_count()) % 2 == 0; },
        [](const SetPartition& p) { return !p.is_identity_pattern() && !p.is_transposition_pattern(); });
}

inline int chebotarev_bound(int n) {
    if (n < 3) throw DomainError("chebotarev_bound needs n >= 3");
    return (n - 1) / 2;
}

// ---------------------------------------------------------------------------

struct PermGroup {
    int n = 0;
    std::vector<Permutation> elements; // sorted; empty when not materialized
    std::vector<Permutation> generators;

    std::size_t order() const { return elements.size(); }
    bool contains(const Permutation& g) const { return std::binary_search(elements.begin(), elements.end(), g); }
};

// Breadth-first closure of the generated group.
inline PermGroup closure(std::span<const Permutation> generators, int n, std::size_t max_order = 1'000'000) {
    for (const auto& g : generators)
        if (g.size() != n) throw DomainError("generators must share degree " + std::to_string(n));
    PermGroup group;
    group.n = n;
    group.generators.assign(generators.begin(), generators.end());
    std::unordered_set<Permutation, PermutationHash> seen;
    std::deque<Permutation> queue;
    auto id = Permutation::identity(n);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
        auto e = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : generators) {
            auto h = g * e;
            if (seen.insert(h).second) {
                if (seen.size() > max_order) throw DomainError("group too large");
                queue.push_back(std::move(h));
            }
        }
    }
    group.elements.assign(seen.begin(), seen.end());
    std::sort(group.elements.begin(), group.elements.end());
    return group;
}

inline PermGroup closure(const std::vector<Permutation>& generators, int n, std::size_t max_order = 1'000'000) {
    return closure(std::span<const Permutation>(generators), n, max_order);
}

inline bool is_transitive(const PermGroup& g) {
    if (g.n <= 1) return true;
    const auto& acting = g.generators.empty() ? g.elements : g.generators;
    std::vector<bool> seen(static_cast<std::size_t>(g.n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        int p = stack.back();
        stack.pop_back();
        for (const auto& s : acting) {
            int q = s(p);
            if (!seen[static_cast<std::size_t>(q)]) {
                seen[static_cast<std::size_t>(q)] = true;
                ++reached;
                stack.push_back(q);
            }
        }
    }
    return reached == g.n;
}

inline std::vector<Permutation> symmetric_generators(int n) {
    if (n < 2) return {};
    std::vector<int> cyc(static_cast<std::size_t>(n));
    std::iota(cyc.begin(), cyc.end(), 1);
    return {Permutation::from_cycles({{1, 2}}, n), Permutation::from_cycles({cyc}, n)};
}

// 3-cycles (1 2 k), k = 3..n.
inline std::vector<Permutation> alternating_generators(int n) {
    std::vector<Permutation> gens;
    for (int k = 3; k <= n; ++k) gens.push_back(Permutation::from_cycles({{1, 2, k}}, n));
    return gens;
}

inline PermGroup even_subgroup(const PermGroup& g) {
    PermGroup out;
    out.n = g.n;
    for (const auto& e : g.elements)
        if (parity(e) == Parity::even) out.elements.push_back(e);
    return out;
}

} // namespace resolvent
