#include "qorbit/word.hpp"

#include "qorbit/errors.hpp"

#include <algorithm>
#include <functional>

namespace qorbit {

Weight word_weight_drop(const RootSystem& rs, const LoweringWord& w) {
    Weight d(rs.ambient_dim());
    for (int i : w) d += rs.alpha(i);
    return d;
}

WordCombo commute_e_through(const RootSystem& rs, int i, const LoweringWord& w,
                            const Weight& mu) {
    WordCombo out;
    if (w.empty()) return out; // e_i kills the highest-weight vector
    // weight of the tail vector below each position
    Weight below = mu;
    for (std::size_t t = 1; t < w.size(); ++t) below -= rs.alpha(w[t]);
    // walk e_i through the word left to right
    LoweringWord prefix;
    Weight tail_weight = below;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (w[t] == i) {
            LoweringWord rest = prefix;
            rest.insert(rest.end(), w.begin() + t + 1, w.end());
            Scalar c = qnum(inner(tail_weight, rs.alpha(i)).exp(), QBase::Q);
            if (!c.is_zero()) {
                auto it = out.find(rest);
                if (it == out.end()) out.emplace(std::move(rest), c);
                else {
                    it->second += c;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
        prefix.push_back(w[t]);
        if (t + 1 < w.size()) tail_weight += rs.alpha(w[t + 1]);
    }
    return out;
}

Scalar WordPairer::pair(const LoweringWord& w1, const LoweringWord& w2) {
    if (w1.empty()) return w2.empty() ? Scalar(1) : Scalar(0);
    if (w1.size() != w2.size()) return Scalar(0);
    {
        // the pairing vanishes unless the letter contents agree
        int counts[16] = {0};
        for (int a : w1) ++counts[a];
        for (int b : w2) --counts[b];
        for (int i = 0; i < rs_.rank(); ++i)
            if (counts[i] != 0) return Scalar(0);
    }
    auto key = std::make_pair(w1, w2);
    auto hit = memo_.find(key);
    if (hit != memo_.end()) return hit->second;
    // peel the first raising letter of omega(w1) through w2
    int letter = w1[0];
    LoweringWord tail(w1.begin() + 1, w1.end());
    Weight below = mu_;
    for (std::size_t t = 1; t < w2.size(); ++t) below -= rs_.alpha(w2[t]);
    Scalar acc;
    Weight tail_weight = below;
    for (std::size_t t = 0; t < w2.size(); ++t) {
        if (w2[t] == letter) {
            Scalar c = qnum(inner(tail_weight, rs_.alpha(letter)).exp(), QBase::Q);
            if (!c.is_zero()) {
                LoweringWord rest;
                rest.reserve(w2.size() - 1);
                rest.insert(rest.end(), w2.begin(), w2.begin() + t);
                rest.insert(rest.end(), w2.begin() + t + 1, w2.end());
                Scalar sub = pair(tail, rest);
                if (!sub.is_zero()) acc += c * sub;
            }
        }
        if (t + 1 < w2.size()) tail_weight += rs_.alpha(w2[t + 1]);
    }
    memo_.emplace(std::move(key), acc);
    return acc;
}

Scalar word_pairing(const RootSystem& rs, const LoweringWord& w1,
                    const LoweringWord& w2, const Weight& mu) {
    if (word_weight_drop(rs, w1) != word_weight_drop(rs, w2)) return Scalar(0);
    WordPairer ctx(rs, mu);
    return ctx.pair(w1, w2);
}

std::vector<std::vector<Scalar>> word_gram(const RootSystem& rs,
                                           const std::vector<LoweringWord>& words,
                                           const Weight& mu) {
    std::size_t n = words.size();
    WordPairer ctx(rs, mu);
    std::vector<std::vector<Scalar>> g(n, std::vector<Scalar>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            g[a][b] = ctx.pair(words[a], words[b]);
            if (b != a) g[b][a] = g[a][b];
        }
    return g;
}

std::vector<LoweringWord> words_of_content(const std::vector<long>& counts) {
    std::vector<LoweringWord> out;
    LoweringWord cur;
    std::vector<long> left = counts;
    long total = 0;
    for (long c : counts) total += c;
    std::function<void()> rec = [&]() {
        if ((long)cur.size() == total) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i < left.size(); ++i) {
            if (left[i] == 0) continue;
            --left[i];
            cur.push_back((int)i);
            rec();
            cur.pop_back();
            ++left[i];
        }
    };
    rec();
    return out;
}

std::vector<mpq_class> alpha_coords(const RootSystem& rs, const Weight& w) {
    // solve sum_i x_i alpha_i = w by elimination in the ambient basis
    std::size_t d = rs.ambient_dim();
    int r = rs.rank();
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(r + 1));
    for (int j = 0; j < r; ++j)
        for (std::size_t i = 0; i < d; ++i) m[i][j] = rs.alpha(j)[i];
    for (std::size_t i = 0; i < d; ++i) m[i][r] = w[i];

    std::vector<int> pivot_col_of_row;
    std::size_t row = 0;
    for (int col = 0; col < r && row < d; ++col) {
        std::size_t prow = row;
        while (prow < d && m[prow][col] == 0) ++prow;
        if (prow == d) continue;
        std::swap(m[row], m[prow]);
        for (std::size_t k = 0; k < d; ++k) {
            if (k == row || m[k][col] == 0) continue;
            mpq_class f = m[k][col] / m[row][col];
            for (int j = col; j <= r; ++j) m[k][j] -= f * m[row][j];
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    // inconsistent rows -> not in the span
    for (std::size_t k = row; k < d; ++k)
        if (m[k][r] != 0) return {};
    std::vector<mpq_class> x(r, mpq_class(0));
    for (std::size_t k = 0; k < pivot_col_of_row.size(); ++k) {
        int col = pivot_col_of_row[k];
        x[col] = m[k][r] / m[k][col];
        x[col].canonicalize();
    }
    return x;
}

long kostant_dim(const RootSystem& rs, const std::vector<long>& depth) {
    // DP over positive roots in alpha-coordinates
    std::vector<std::vector<long>> roots;
    for (auto& b : rs.positive_roots()) {
        auto c = alpha_coords(rs, b);
        std::vector<long> v;
        for (auto& q : c) v.push_back(q.get_num().get_si());
        roots.push_back(std::move(v));
    }
    std::map<std::vector<long>, long> table;
    table[std::vector<long>(depth.size(), 0)] = 1;
    for (auto& root : roots) {
        std::map<std::vector<long>, long> next;
        for (auto& [pt, cnt] : table) {
            std::vector<long> cur = pt;
            while (true) {
                bool ok = true;
                for (std::size_t i = 0; i < cur.size(); ++i)
                    if (cur[i] > depth[i]) { ok = false; break; }
                if (!ok) break;
                next[cur] += cnt;
                for (std::size_t i = 0; i < cur.size(); ++i) cur[i] += root[i];
            }
        }
        table = std::move(next);
    }
    auto it = table.find(depth);
    return it == table.end() ? 0 : it->second;
}

} // namespace qorbit
