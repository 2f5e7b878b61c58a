#ifndef QORBIT_EXTREMAL_HPP
#define QORBIT_EXTREMAL_HPP

#include "qorbit/module.hpp"

namespace qorbit {

// Shift argument of the extremal projector of the sl2 along root i:
// pi(h~ + 1) in the normalized variable h~ = (w, alpha^vee).
ShiftParam extremal_projector_shift(const RootSystem& rs, int i);

// Weight-homogeneous operator materialized as per-weight-space blocks.
// Weights whose evaluation left the truncation window are listed in skipped.
struct GradedOperator {
    const Module* mod = nullptr;
    Weight shift;
    std::map<Weight, DMat> blocks;
    std::set<Weight> skipped;
};

GradedOperator materialize(const ModulePtr& m, const OpPtr& op,
                           const std::optional<GaussQ>& t_sub = std::nullopt);

enum class CheckMode { Symbolic, Multipoint };

struct CheckOutcome {
    std::string identity;
    std::string module;
    std::string statement;
    CheckMode mode = CheckMode::Symbolic;
    bool pass = false;
    long spaces_checked = 0;
    long points_used = 0;
    long degree_bound = 0;
    std::string witness; // first failing space and entry, when pass = false

    const char* mode_name() const {
        return mode == CheckMode::Symbolic ? "symbolic" : "multipoint";
    }
};

// Compare two operator programs on every weight space of m where both stay
// inside the window. In multipoint mode the comparison runs at sample values
// of the transcendental, with the sample count exceeding t_degree_bound.
CheckOutcome check_operator_identity(const std::string& name, const ModulePtr& m,
                                     const OpPtr& lhs, const OpPtr& rhs,
                                     const std::string& statement, CheckMode mode,
                                     int t_degree_bound);

// The named identity suite of the shifted-projector layer. Names:
//   projector_idempotent, projector_kills_raising, projector_absorbs_lowering,
//   intertwine_e, intertwine_f, projector_eigenvalue, c_series_closed_form,
//   projector_transpose, projector_factorization, dynamical_f, dynamical_e,
//   falpha_through_fdelta, fdelta_falpha_squared, eb_fdelta_commutator,
//   pseudo_singular, projector_invertible
std::vector<std::string> projector_suite_names();
std::vector<CheckOutcome> verify_identity(const std::string& name, CheckMode mode);
std::vector<CheckOutcome> run_projector_suite(CheckMode mode);

// Prop-style singular vector: pi_alpha(2 h_alpha + 1) f_delta^m 1_mu in the
// so(5) Verma module, for mu with [(mu+rho, delta) - m]_q = 0. Returns the
// vector and certifies annihilation by both raising generators.
struct PseudoSingular {
    ModulePtr verma;
    ModVec vector;
    Weight weight;
};
PseudoSingular pseudo_singular(const Weight& mu, long m);

} // namespace qorbit

#endif
