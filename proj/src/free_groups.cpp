#include "ncm/free_groups.hpp"

#include <array>
#include <deque>
#include <limits>

#include "ncm/errors.hpp"

namespace ncm {

Letter inverse(Letter x) { return static_cast<Letter>(static_cast<std::uint8_t>(x) ^ 1u); }

char letter_char(Letter x) {
    static constexpr char chars[4] = {'a', 'A', 'b', 'B'};
    return chars[static_cast<std::uint8_t>(x)];
}

Word Word::parse(const std::string& text) {
    std::vector<Letter> letters;
    for (char c : text) {
        switch (c) {
            case 'a': letters.push_back(Letter::a); break;
            case 'A': letters.push_back(Letter::a_inv); break;
            case 'b': letters.push_back(Letter::b); break;
            case 'B': letters.push_back(Letter::b_inv); break;
            default: throw PreconditionError(std::string("not a letter of F(a,b): '") + c + "'");
        }
    }
    return Word(std::move(letters));
}

bool Word::is_reduced() const {
    for (std::size_t i = 1; i < letters_.size(); ++i) {
        if (letters_[i] == inverse(letters_[i - 1])) return false;
    }
    return true;
}

Word Word::reduced() const {
    std::vector<Letter> out;
    for (Letter x : letters_) {
        if (!out.empty() && out.back() == inverse(x)) {
            out.pop_back();
        } else {
            out.push_back(x);
        }
    }
    return Word(std::move(out));
}

std::string to_string(const Word& w) {
    std::string s;
    for (Letter x : w.letters()) s += letter_char(x);
    return s;
}

bool is_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (Vertex v : p) {
        if (v >= p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation inverse(const Permutation& p) {
    Permutation inv(p.size());
    for (Vertex i = 0; i < p.size(); ++i) inv[p[i]] = i;
    return inv;
}

Vertex step(const Permutation& perm_a, const Permutation& perm_b, const Permutation& inv_a,
            const Permutation& inv_b, Vertex from, Letter x) {
    switch (x) {
        case Letter::a: return perm_a[from];
        case Letter::a_inv: return inv_a[from];
        case Letter::b: return perm_b[from];
        case Letter::b_inv: return inv_b[from];
    }
    return from;
}

// --- SubgroupTable ---------------------------------------------------------------

namespace {

// BFS relabeling from `root`; returns the new label of every old vertex.
// Unreached vertices keep the sentinel.
std::vector<Vertex> bfs_labels(const Permutation& a, const Permutation& b, const Permutation& ia,
                               const Permutation& ib, Vertex root) {
    constexpr Vertex unset = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> label(a.size(), unset);
    std::vector<Vertex> order{root};
    label[root] = 0;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (Letter x : kLetters) {
            Vertex w = step(a, b, ia, ib, order[head], x);
            if (label[w] == unset) {
                label[w] = static_cast<Vertex>(order.size());
                order.push_back(w);
            }
        }
    }
    return label;
}

}  // namespace

SubgroupTable::SubgroupTable(Permutation perm_a, Permutation perm_b)
    : perm_a_(std::move(perm_a)), perm_b_(std::move(perm_b)) {
    require(!perm_a_.empty(), "subgroup table of degree 0");
    require(perm_a_.size() == perm_b_.size(), "permutations of different degree");
    require(is_permutation(perm_a_) && is_permutation(perm_b_), "table rows are not permutations");
    inv_a_ = inverse(perm_a_);
    inv_b_ = inverse(perm_b_);
    auto label = bfs_labels(perm_a_, perm_b_, inv_a_, inv_b_, 0);
    for (Vertex l : label) {
        require(l != std::numeric_limits<Vertex>::max(), "action is not transitive");
    }
}

Vertex SubgroupTable::act(Vertex v, Letter x) const { return step(perm_a_, perm_b_, inv_a_, inv_b_, v, x); }

Vertex SubgroupTable::trace(Vertex start, const Word& w) const {
    Vertex v = start;
    for (Letter x : w.letters()) v = act(v, x);
    return v;
}

SubgroupTable SubgroupTable::canonical() const {
    auto label = bfs_labels(perm_a_, perm_b_, inv_a_, inv_b_, 0);
    Permutation a(degree()), b(degree());
    for (Vertex v = 0; v < degree(); ++v) {
        a[label[v]] = label[perm_a_[v]];
        b[label[v]] = label[perm_b_[v]];
    }
    return {std::move(a), std::move(b)};
}

bool SubgroupTable::is_canonical() const {
    auto c = canonical();
    return c.perm_a_ == perm_a_ && c.perm_b_ == perm_b_;
}

bool operator==(const SubgroupTable& x, const SubgroupTable& y) {
    if (x.degree() != y.degree()) return false;
    auto cx = x.canonical();
    auto cy = y.canonical();
    return cx.perm_a_ == cy.perm_a_ && cx.perm_b_ == cy.perm_b_;
}

std::string to_string(const SubgroupTable& t) {
    std::string s = "a=[";
    for (std::size_t i = 0; i < t.degree(); ++i) s += (i ? " " : "") + std::to_string(t.perm_a()[i]);
    s += "] b=[";
    for (std::size_t i = 0; i < t.degree(); ++i) s += (i ? " " : "") + std::to_string(t.perm_b()[i]);
    return s + "]";
}

// --- enumeration -------------------------------------------------------------------

namespace {

// Coset table completion: cosets are numbered in order of definition while
// scanning entries (coset, letter) in order, which is exactly the canonical
// breadth-first labeling. Each canonical table is therefore produced once.
class LowIndexEnumerator {
public:
    explicit LowIndexEnumerator(std::size_t k) : k_(k), table_(k) {
        for (auto& row : table_) row.fill(kUndefined);
    }

    std::vector<SubgroupTable> run() {
        defined_ = 1;
        extend();
        return std::move(out_);
    }

private:
    static constexpr Vertex kUndefined = std::numeric_limits<Vertex>::max();

    void set(Vertex i, Letter x, Vertex j) {
        table_[i][static_cast<std::size_t>(x)] = j;
        table_[j][static_cast<std::size_t>(inverse(x))] = i;
    }

    void unset(Vertex i, Letter x, Vertex j) {
        table_[i][static_cast<std::size_t>(x)] = kUndefined;
        table_[j][static_cast<std::size_t>(inverse(x))] = kUndefined;
    }

    void extend() {
        Vertex i = 0;
        Letter x = Letter::a;
        bool found = false;
        for (Vertex c = 0; c < defined_ && !found; ++c) {
            for (Letter y : kLetters) {
                if (table_[c][static_cast<std::size_t>(y)] == kUndefined) {
                    i = c;
                    x = y;
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            if (defined_ == k_) emit();
            return;
        }
        const auto xi = static_cast<std::size_t>(inverse(x));
        for (Vertex j = 0; j < defined_; ++j) {
            if (table_[j][xi] != kUndefined) continue;
            set(i, x, j);
            extend();
            unset(i, x, j);
        }
        if (defined_ < k_) {
            Vertex fresh = static_cast<Vertex>(defined_++);
            set(i, x, fresh);
            extend();
            unset(i, x, fresh);
            --defined_;
        }
    }

    void emit() {
        Permutation a(k_), b(k_);
        for (Vertex v = 0; v < k_; ++v) {
            a[v] = table_[v][static_cast<std::size_t>(Letter::a)];
            b[v] = table_[v][static_cast<std::size_t>(Letter::b)];
        }
        out_.emplace_back(std::move(a), std::move(b));
    }

    std::size_t k_;
    std::size_t defined_ = 0;
    std::vector<std::array<Vertex, 4>> table_;
    std::vector<SubgroupTable> out_;
};

}  // namespace

std::vector<SubgroupTable> enumerate_subgroups(std::size_t k) {
    require(k >= 1, "subgroup index must be positive");
    if (k > kMaxEnumerationIndex) {
        throw CapacityError("index " + std::to_string(k) + " exceeds the enumeration cap of " +
                            std::to_string(kMaxEnumerationIndex));
    }
    return LowIndexEnumerator(k).run();
}

Integer hall_count(std::size_t k) {
    require(k >= 1, "subgroup index must be positive");
    std::vector<Integer> factorial(k + 1, 1);
    for (std::size_t i = 1; i <= k; ++i) factorial[i] = factorial[i - 1] * static_cast<unsigned long>(i);
    std::vector<Integer> a(k + 1, 0);
    for (std::size_t n = 1; n <= k; ++n) {
        Integer v = static_cast<unsigned long>(n) * factorial[n];
        for (std::size_t i = 1; i < n; ++i) v -= factorial[n - i] * a[i];
        a[n] = v;
    }
    return a[k];
}

bool word_membership(const SubgroupTable& h, const Word& w) {
    return h.trace(SubgroupTable::basepoint(), w) == SubgroupTable::basepoint();
}

std::optional<Word> distinguishing_word(const SubgroupTable& h1, const SubgroupTable& h2) {
    const std::size_t n2 = h2.degree();
    const std::size_t states = h1.degree() * n2;
    constexpr std::uint64_t unseen = std::numeric_limits<std::uint64_t>::max();
    // parent state and letter used to reach each product state
    std::vector<std::uint64_t> parent(states, unseen);
    std::vector<Letter> via(states, Letter::a);
    std::deque<std::uint64_t> queue{0};
    parent[0] = 0;
    while (!queue.empty()) {
        std::uint64_t s = queue.front();
        queue.pop_front();
        auto x = static_cast<Vertex>(s / n2);
        auto y = static_cast<Vertex>(s % n2);
        if ((x == 0) != (y == 0)) {
            std::vector<Letter> letters;
            for (std::uint64_t t = s; t != 0; t = parent[t]) letters.push_back(via[t]);
            Word w(std::vector<Letter>(letters.rbegin(), letters.rend()));
            ensure(word_membership(h1, w) != word_membership(h2, w), "distinguishing word fails to separate");
            ensure(w.is_reduced(), "distinguishing word is not reduced");
            return w;
        }
        for (Letter l : kLetters) {
            std::uint64_t t = static_cast<std::uint64_t>(h1.act(x, l)) * n2 + h2.act(y, l);
            if (parent[t] != unseen) continue;
            parent[t] = s;
            via[t] = l;
            queue.push_back(t);
        }
    }
    return std::nullopt;
}

}  // namespace ncm
