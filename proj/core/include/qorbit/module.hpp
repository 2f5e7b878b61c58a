#ifndef QORBIT_MODULE_HPP
#define QORBIT_MODULE_HPP

#include "qorbit/compound.hpp"
#include "qorbit/linalg.hpp"
#include "qorbit/word.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>

namespace qorbit {

class Module;
using ModulePtr = std::shared_ptr<Module>;

// Sparse vector in a module: coordinates per weight space, plus a flag that
// records whether some part of an evaluation left the truncation window (in
// which case the coordinates are not trustworthy).
struct ModVec {
    const Module* mod = nullptr;
    std::map<Weight, DVec> comps;
    bool overflow = false;

    bool is_zero() const;
    ModVec& add_scaled(const ModVec& other, const Scalar& c);
    ModVec scaled(const Scalar& c) const;
    void prune();
};

enum class Place { Inside, OutsideSupport, OutsideWindow };

// Weight module with exact per-weight-space data: basis, contravariant Gram
// matrix, and generator blocks. Built once by a breadth-first sweep; linear
// dependencies are resolved by Gram rank (quotient modules) or against a
// reference generic weight (Verma modules at arbitrary highest weight).
class Module : public std::enable_shared_from_this<Module> {
public:
    enum class Kind { Verma, Irreducible, Base, Tensor };

    static ModulePtr verma(const RootSystem& rs, const Weight& mu,
                           std::vector<long> depth_box);
    static ModulePtr irreducible(const RootSystem& rs, const Weight& nu);
    enum class BaseRoute { Propagate, Pairings };
    static ModulePtr base_module(const RootSystem& rs, std::vector<long> eps_box,
                                 BaseRoute route = BaseRoute::Propagate);
    static ModulePtr tensor(ModulePtr left, ModulePtr right, Coproduct conv);

    Kind kind() const { return kind_; }
    const RootSystem& rs() const { return rs_; }
    const Weight& highest() const { return highest_; }
    const std::string& name() const { return name_; }
    Coproduct coproduct() const { return conv_; }

    const std::vector<Weight>& weights() const { return weight_list_; }
    int dim(const Weight& w) const;
    mpz_class total_dim() const;
    Place place(const Weight& w) const;
    const DMat& gram(const Weight& w) const;

    // f_i block W[w] -> W[w - alpha_i] and e_i block W[w] -> W[w + alpha_i];
    // nullptr when the target space is zero. Throws window_error when the
    // target lies outside the truncation window.
    const DMat* f_block(int i, const Weight& from) const;
    const DMat* e_block(int i, const Weight& from) const;

    Scalar k_scalar(int i, const Weight& w, int exp) const;

    ModVec zero_vec() const;
    ModVec basis_vec(const Weight& w, int idx) const;
    ModVec highest_vec() const { return basis_vec(highest_, 0); }

    // Evaluate an operator program; ModVec::overflow reports window exits.
    // A set t_sub evaluates every program coefficient at T = t_sub (the
    // multipoint regime); a coefficient pole at the sample raises pole_error.
    ModVec apply(const OpPtr& op, const ModVec& v,
                 const std::optional<GaussQ>& t_sub = std::nullopt) const;
    ModVec apply_word(const LoweringWord& w, const ModVec& v) const;

    // Bilinear contravariant form (not stored on tensor handles).
    Scalar pair(const ModVec& a, const ModVec& b) const;

    // Base-module interface.
    const std::vector<long>& eps_box() const { return eps_box_; }
    std::optional<std::vector<long>> site_of(const Weight& w) const;
    Weight weight_of_site(const std::vector<long>& m) const;

    // Lowering word w with w . highest = scalar * basis(w, idx); alternate
    // asks for a second section through a different parent where one exists.
    std::pair<LoweringWord, Scalar> section_word(const Weight& w, int idx,
                                                 bool alternate = false) const;

    // Tensor interface.
    const ModulePtr& left_factor() const { return left_; }
    const ModulePtr& right_factor() const { return right_; }
    struct TensorLabel {
        Weight wl;
        int il;
        Weight wr;
        int ir;
    };
    const std::vector<TensorLabel>& tensor_labels(const Weight& w) const;

private:
    enum class BlockStatus { Ok, Zero, Window };

    explicit Module(const RootSystem& rs) : rs_(rs) {}

    struct WSpace {
        int dim = 0;
        // basis_a = chain_coeff_a * f_{gen}(parent basis vector)
        std::vector<std::pair<int, int>> chain;
        std::vector<Scalar> chain_coeff;
        DMat gram; // empty until first requested
        std::map<int, DMat> f_in;  // from w + alpha_i into w
        std::map<int, DMat> e_out; // from w into w + alpha_i
    };

    void sweep(bool quotient, long height_cap);
    bool sweep_admits(const Weight& w) const;
    DVec e_into_parent_space(int gen_a, int gen_b, int parent_idx, const Weight& w) const;
    void rebuild_at_weight(const Module& skeleton, const Weight& mu);
    void build_base_from_verma(const std::vector<long>& nominal_box);
    void build_base_by_pairings(const std::vector<long>& nominal_box);
    void finish_base_chains();
    void trim_to_box(const std::vector<long>& nominal_box);
    const DMat& lazy_gram(const Weight& w) const;
    DMat build_tensor_block(bool lowering, int i, const Weight& from) const;
    BlockStatus lookup_block(bool lowering, int i, const Weight& from, const DMat** out) const;
    ModVec apply_pi(const OpExpr& node, const ModVec& v,
                    const std::optional<GaussQ>& t_sub) const;

    RootSystem rs_;
    Kind kind_ = Kind::Verma;
    std::string name_;
    Weight highest_;
    std::vector<long> alpha_box_; // verma window
    std::vector<long> eps_box_;   // base window

    mutable std::map<Weight, WSpace> spaces_;
    std::vector<Weight> weight_list_;

    // tensor data
    ModulePtr left_, right_;
    Coproduct conv_ = Coproduct::Sec3;
    mutable std::recursive_mutex lazy_mtx_;
    mutable std::map<Weight, std::vector<TensorLabel>> tlabels_;
    mutable std::map<std::pair<int, Weight>, DMat> tblock_cache_;
};

// Shapovalov Gram matrix of all lowering words of the given content at
// highest weight mu (word-level oracle, independent of the module engine).
DMat shapovalov_gram(const RootSystem& rs, const Weight& mu,
                     const std::vector<long>& depth_content);

} // namespace qorbit

#endif
