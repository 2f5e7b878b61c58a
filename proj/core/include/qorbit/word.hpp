#ifndef QORBIT_WORD_HPP
#define QORBIT_WORD_HPP

#include "qorbit/root_system.hpp"

#include <map>
#include <vector>

namespace qorbit {

// Word f_{i1} f_{i2} ... f_{ik} applied to a highest-weight generator;
// indices are 0-based simple roots, leftmost letter acts last. The empty
// word is the highest-weight vector itself.
using LoweringWord = std::vector<int>;

Weight word_weight_drop(const RootSystem& rs, const LoweringWord& w);

// Linear combination of lowering words.
using WordCombo = std::map<LoweringWord, Scalar>;

// e_i (w . 1_mu) expanded over shorter words applied to 1_mu, using only
// [e_i, f_j] = delta_ij [h_i]_q and the weight grading.
WordCombo commute_e_through(const RootSystem& rs, int i, const LoweringWord& w,
                            const Weight& mu);

// Contravariant pairing <w1 . 1_mu, w2 . 1_mu> with <1,1> = 1 and
// <x u, v> = <u, omega(x) v>.
Scalar word_pairing(const RootSystem& rs, const LoweringWord& w1,
                    const LoweringWord& w2, const Weight& mu);

// Memoized pairing engine for a fixed highest weight; subproblems repeat
// heavily across related words, so batch users should share one instance.
class WordPairer {
public:
    WordPairer(const RootSystem& rs, Weight mu) : rs_(rs), mu_(std::move(mu)) {}
    Scalar pair(const LoweringWord& w1, const LoweringWord& w2);
    std::size_t memo_size() const { return memo_.size(); }

private:
    const RootSystem& rs_;
    Weight mu_;
    std::map<std::pair<LoweringWord, LoweringWord>, Scalar> memo_;
};

// Gram matrix of a list of lowering words at highest weight mu.
std::vector<std::vector<Scalar>> word_gram(const RootSystem& rs,
                                           const std::vector<LoweringWord>& words,
                                           const Weight& mu);

// All words with the given per-root letter counts.
std::vector<LoweringWord> words_of_content(const std::vector<long>& counts);

// Coordinates of a weight in the simple-root basis; empty when the weight is
// not in the root lattice span.
std::vector<mpq_class> alpha_coords(const RootSystem& rs, const Weight& w);

// Dimension of the weight space of depth sum(d_i alpha_i) in a Verma module
// (number of positive-root multisets with that total).
long kostant_dim(const RootSystem& rs, const std::vector<long>& depth);

} // namespace qorbit

#endif
