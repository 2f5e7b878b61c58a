#include "qorbit/module.hpp"

#include "qorbit/errors.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qorbit {

namespace {

// Reference generic weights for resolving word dependencies. The symbolic
// part s makes every Shapovalov factor that could vanish carry the
// transcendental T, and the rational offsets keep the remaining (symbol-free)
// factors away from the integers a desk-scale window can reach. The extracted
// structure constants are T-free; T stays symbolic only inside the build.
Weight reference_weight(const RootSystem& rs) {
    switch (rs.type()) {
        case LieType::A1:
            return Weight({mpq_class(0), mpq_class(0)}, 0, {mpq_class(1), mpq_class(0)});
        case LieType::A2:
            return Weight({mpq_class(0), mpq_class(-1, 2), mpq_class(-26)}, 0,
                          {mpq_class(1), mpq_class(0), mpq_class(-1)});
        case LieType::B: {
            static const mpq_class offs[3] = {mpq_class(0), mpq_class(1, 2), mpq_class(25)};
            std::vector<mpq_class> c, t;
            for (int i = 0; i < rs.rank(); ++i) {
                c.push_back(i < 3 ? offs[i] : offs[2] + 26 * (i - 2));
                t.push_back(1);
            }
            return Weight(std::move(c), 0, std::move(t));
        }
    }
    throw precondition_error("bad root system");
}

std::optional<std::vector<long>> integer_coords(const std::vector<mpq_class>& q) {
    std::vector<long> v;
    v.reserve(q.size());
    for (auto& x : q) {
        if (x.get_den() != 1) return std::nullopt;
        v.push_back(x.get_num().get_si());
    }
    return v;
}

} // namespace

bool ModVec::is_zero() const {
    for (auto& [w, c] : comps)
        for (auto& x : c)
            if (!x.is_zero()) return false;
    return true;
}

ModVec& ModVec::add_scaled(const ModVec& other, const Scalar& c) {
    overflow = overflow || other.overflow;
    if (c.is_zero()) return *this;
    for (auto& [w, v] : other.comps) {
        auto it = comps.find(w);
        if (it == comps.end()) {
            DVec nv(v.size());
            for (std::size_t k = 0; k < v.size(); ++k) nv[k] = v[k] * c;
            comps.emplace(w, std::move(nv));
        } else {
            for (std::size_t k = 0; k < v.size(); ++k) it->second[k] += v[k] * c;
        }
    }
    return *this;
}

ModVec ModVec::scaled(const Scalar& c) const {
    ModVec r;
    r.mod = mod;
    r.overflow = overflow;
    if (c.is_zero()) return r;
    for (auto& [w, v] : comps) {
        DVec nv(v.size());
        for (std::size_t k = 0; k < v.size(); ++k) nv[k] = v[k] * c;
        r.comps.emplace(w, std::move(nv));
    }
    return r;
}

void ModVec::prune() {
    for (auto it = comps.begin(); it != comps.end();) {
        bool nonzero = false;
        for (auto& x : it->second)
            if (!x.is_zero()) { nonzero = true; break; }
        it = nonzero ? std::next(it) : comps.erase(it);
    }
}

int Module::dim(const Weight& w) const {
    if (kind_ == Kind::Tensor) {
        if (place(w) != Place::Inside) return 0;
        return static_cast<int>(tensor_labels(w).size());
    }
    auto it = spaces_.find(w);
    return it == spaces_.end() ? 0 : it->second.dim;
}

mpz_class Module::total_dim() const {
    mpz_class t = 0;
    for (auto& [w, s] : spaces_) t += s.dim;
    return t;
}

Place Module::place(const Weight& w) const {
    switch (kind_) {
        case Kind::Verma: {
            if (w.lambda_mult() != highest_.lambda_mult()) return Place::OutsideSupport;
            auto ac = alpha_coords(rs_, Weight(highest_.coords()) - Weight(w.coords()));
            if (ac.empty()) return Place::OutsideSupport;
            auto v = integer_coords(ac);
            if (!v) return Place::OutsideSupport;
            for (std::size_t i = 0; i < v->size(); ++i) {
                if ((*v)[i] < 0) return Place::OutsideSupport;
                if ((*v)[i] > alpha_box_[i]) return Place::OutsideWindow;
            }
            return Place::Inside;
        }
        case Kind::Irreducible:
            return spaces_.count(w) ? Place::Inside : Place::OutsideSupport;
        case Kind::Base: {
            auto m = site_of(w);
            if (!m) return Place::OutsideSupport;
            for (std::size_t i = 0; i < m->size(); ++i)
                if ((*m)[i] > eps_box_[i]) return Place::OutsideWindow;
            return Place::Inside;
        }
        case Kind::Tensor: {
            bool any_inside = false;
            for (auto& wl : left_->weights()) {
                Weight wr = w - wl;
                switch (right_->place(wr)) {
                    case Place::OutsideWindow: return Place::OutsideWindow;
                    case Place::Inside:
                        if (right_->dim(wr) > 0) any_inside = true;
                        break;
                    case Place::OutsideSupport: break;
                }
            }
            return any_inside ? Place::Inside : Place::OutsideSupport;
        }
    }
    return Place::OutsideSupport;
}

const DMat& Module::gram(const Weight& w) const {
    auto it = spaces_.find(w);
    if (it == spaces_.end() || it->second.dim == 0)
        throw precondition_error("gram of an empty weight space");
    if (it->second.gram.empty()) return lazy_gram(w);
    return it->second.gram;
}

// Gram matrices are filled on demand: <b_a, b_b> = cc_a <u_a, e_{i_a} b_b>
// runs over the stored e blocks and the parents' Gram matrices.
const DMat& Module::lazy_gram(const Weight& w) const {
    std::lock_guard<std::recursive_mutex> lock(lazy_mtx_);
    WSpace& sp = spaces_.at(w);
    if (!sp.gram.empty() || sp.dim == 0) return sp.gram;
    int d = sp.dim;
    DMat g = dmat(d, d);
    for (int a = 0; a < d; ++a) {
        int ia = sp.chain[a].first;
        int ua = sp.chain[a].second;
        Scalar cc = sp.chain_coeff.empty() ? Scalar(1) : sp.chain_coeff[a];
        const Weight pw = w + rs_.alpha(ia);
        const DMat& pg = gram(pw); // recursive fill toward the top
        auto eit = sp.e_out.find(ia);
        for (int b = 0; b < d; ++b) {
            Scalar val;
            if (eit != sp.e_out.end()) {
                const DMat& eb = eit->second;
                for (std::size_t t = 0; t < eb.size(); ++t)
                    if (!eb[t][b].is_zero()) val += pg[ua][t] * eb[t][b];
            }
            g[a][b] = cc * val;
        }
    }
    sp.gram = std::move(g);
    return sp.gram;
}

const DMat* Module::f_block(int i, const Weight& from) const {
    const DMat* b = nullptr;
    switch (lookup_block(true, i, from, &b)) {
        case BlockStatus::Ok: return b;
        case BlockStatus::Zero: return nullptr;
        case BlockStatus::Window:
            throw window_error("f-action leaves the truncation window at " + from.str());
    }
    return nullptr;
}

const DMat* Module::e_block(int i, const Weight& from) const {
    const DMat* b = nullptr;
    switch (lookup_block(false, i, from, &b)) {
        case BlockStatus::Ok: return b;
        case BlockStatus::Zero: return nullptr;
        case BlockStatus::Window:
            throw window_error("e-action leaves the truncation window at " + from.str());
    }
    return nullptr;
}

Scalar Module::k_scalar(int i, const Weight& w, int exp) const {
    return q_power(inner(w, rs_.alpha(i)).exp().scaled(exp));
}

ModVec Module::zero_vec() const {
    ModVec v;
    v.mod = this;
    return v;
}

ModVec Module::basis_vec(const Weight& w, int idx) const {
    int d = dim(w);
    if (idx < 0 || idx >= d) throw precondition_error("basis index out of range");
    ModVec v = zero_vec();
    DVec c(d);
    c[idx] = Scalar(1);
    v.comps.emplace(w, std::move(c));
    return v;
}

std::optional<std::vector<long>> Module::site_of(const Weight& w) const {
    if (kind_ != Kind::Base) return std::nullopt;
    if (w.lambda_mult() != 1) return std::nullopt;
    std::vector<long> m;
    for (std::size_t i = 0; i < w.dim(); ++i) {
        mpq_class c = -w[i];
        if (c.get_den() != 1 || c < 0) return std::nullopt;
        m.push_back(c.get_num().get_si());
    }
    return m;
}

Weight Module::weight_of_site(const std::vector<long>& m) const {
    std::vector<mpq_class> c;
    for (long x : m) c.emplace_back(-x);
    return Weight(std::move(c), 1);
}

// ---------------------------------------------------------------------------
// sweep construction

bool Module::sweep_admits(const Weight& w) const {
    if (kind_ == Kind::Base) {
        auto m = site_of(w);
        if (!m) return false;
        for (std::size_t k = 0; k < m->size(); ++k)
            if ((*m)[k] > eps_box_[k]) return false;
        return true;
    }
    if (kind_ == Kind::Verma) {
        auto ac = integer_coords(
            alpha_coords(rs_, Weight(highest_.coords()) - Weight(w.coords())));
        if (!ac) return false;
        for (std::size_t k = 0; k < ac->size(); ++k)
            if ((*ac)[k] < 0 || (*ac)[k] > alpha_box_[k]) return false;
        return true;
    }
    return true; // irreducible: no window
}

// e_{gen_a} applied to the candidate f_{gen_b}(u), coordinates in the space
// at w + alpha_{gen_a}; all referenced blocks live at lower heights.
DVec Module::e_into_parent_space(int gen_a, int gen_b, int parent_idx, const Weight& w) const {
    const Weight pa = w + rs_.alpha(gen_a);
    const Weight pb = w + rs_.alpha(gen_b);
    const WSpace& ta = spaces_.at(pa);
    const WSpace& sb = spaces_.at(pb);
    DVec acc(ta.dim, Scalar(0));
    auto eit = sb.e_out.find(gen_a);
    if (eit != sb.e_out.end()) {
        const DMat& eb = eit->second; // pb -> pb + alpha_a
        DVec eu(eb.size());
        for (std::size_t r = 0; r < eb.size(); ++r) eu[r] = eb[r][parent_idx];
        auto fit = ta.f_in.find(gen_b); // pb + alpha_a -> pa
        if (fit != ta.f_in.end()) {
            const DMat& fb = fit->second;
            for (std::size_t r = 0; r < fb.size(); ++r)
                for (std::size_t c = 0; c < eu.size(); ++c)
                    if (!fb[r][c].is_zero() && !eu[c].is_zero()) acc[r] += fb[r][c] * eu[c];
        }
    }
    if (gen_a == gen_b) {
        Scalar hq = qnum(inner(pb, rs_.alpha(gen_a)).exp(), QBase::Q);
        if (!hq.is_zero()) acc[parent_idx] += hq;
    }
    return acc;
}

void Module::sweep(bool quotient, long height_cap) {
    spaces_.clear();
    WSpace top;
    top.dim = 1;
    top.gram = {{Scalar(1)}};
    spaces_.emplace(highest_, std::move(top));

    std::vector<Weight> level = {highest_};
    for (long h = 1; h <= height_cap && !level.empty(); ++h) {
        std::set<Weight> targets;
        for (auto& w : level) {
            if (spaces_.at(w).dim == 0) continue;
            for (int i = 0; i < rs_.rank(); ++i) {
                Weight t = w - rs_.alpha(i);
                if (spaces_.count(t)) continue;
                if (sweep_admits(t)) targets.insert(t);
            }
        }
        std::vector<Weight> next_level;
        bool any_dim = false;
        for (auto& w : targets) {
            struct Cand {
                int gen;
                int parent_idx;
            };
            std::vector<Cand> cands;
            for (int i = 0; i < rs_.rank(); ++i) {
                auto pit = spaces_.find(w + rs_.alpha(i));
                if (pit == spaces_.end() || pit->second.dim == 0) continue;
                for (int u = 0; u < pit->second.dim; ++u) cands.push_back({i, u});
            }
            if (cands.empty()) continue;
            std::size_t nc = cands.size();

            // Candidates are resolved through their joint raising images:
            // below the highest weight there are no singular vectors (the
            // reference weight is generic; quotients are irreducible), so the
            // map v -> (e_1 v, ..., e_n v) is injective and dependencies among
            // candidates equal dependencies among image columns.
            std::vector<int> col_off(rs_.rank() + 1, 0);
            for (int i = 0; i < rs_.rank(); ++i) {
                auto pit = spaces_.find(w + rs_.alpha(i));
                int dimp = (pit == spaces_.end()) ? 0 : pit->second.dim;
                col_off[i + 1] = col_off[i] + dimp;
            }
            DMat A = dmat(col_off[rs_.rank()], nc);
            for (std::size_t j = 0; j < nc; ++j) {
                for (int i = 0; i < rs_.rank(); ++i) {
                    if (col_off[i + 1] == col_off[i]) continue;
                    DVec x = e_into_parent_space(i, cands[j].gen, cands[j].parent_idx, w);
                    for (std::size_t r = 0; r < x.size(); ++r) A[col_off[i] + r][j] = x[r];
                }
            }
            Echelon ech0 = echelon(std::move(A));
            FFExpand ech;
            ech.rank = ech0.rank;
            ech.pivot_cols = ech0.pivot_cols;
            ech.coords = dmat(ech0.rank, nc);
            for (std::size_t j = 0; j < nc; ++j)
                for (int r = 0; r < ech0.rank; ++r) ech.coords[r][j] = ech0.rref[r][j];
            int d = ech.rank;
            if (!quotient) {
                auto depth = integer_coords(
                    alpha_coords(rs_, Weight(highest_.coords()) - Weight(w.coords())));
                if (d != kostant_dim(rs_, *depth))
                    throw precondition_error("reference Verma weight degenerate at " + w.str());
            }
            WSpace ws;
            ws.dim = d;
            if (d > 0) {
                any_dim = true;
                for (int r = 0; r < d; ++r) {
                    ws.chain.emplace_back(cands[ech.pivot_cols[r]].gen,
                                          cands[ech.pivot_cols[r]].parent_idx);
                    ws.chain_coeff.emplace_back(1);
                }
                // expansion of every candidate over the pivot basis
                const DMat& expans = ech.coords;
                for (int i = 0; i < rs_.rank(); ++i) {
                    auto pit = spaces_.find(w + rs_.alpha(i));
                    if (pit == spaces_.end() || pit->second.dim == 0) continue;
                    DMat fb = dmat(d, pit->second.dim);
                    bool nonzero = false;
                    for (std::size_t j = 0; j < nc; ++j) {
                        if (cands[j].gen != i) continue;
                        for (int r = 0; r < d; ++r) {
                            fb[r][cands[j].parent_idx] = expans[r][j];
                            if (!fb[r][cands[j].parent_idx].is_zero()) nonzero = true;
                        }
                    }
                    if (nonzero) ws.f_in.emplace(i, std::move(fb));
                }
                // gram matrices fill lazily on demand
            }
            spaces_.emplace(w, std::move(ws));
            next_level.push_back(w);
        }
        // e blocks out of the new level (need the level's f blocks in place)
        for (auto& w : next_level) {
            WSpace& ws = spaces_.at(w);
            if (ws.dim == 0) continue;
            for (int i = 0; i < rs_.rank(); ++i) {
                auto tit = spaces_.find(w + rs_.alpha(i));
                if (tit == spaces_.end() || tit->second.dim == 0) continue;
                DMat eb = dmat(tit->second.dim, ws.dim);
                bool nonzero = false;
                for (int bidx = 0; bidx < ws.dim; ++bidx) {
                    DVec coords = e_into_parent_space(i, ws.chain[bidx].first,
                                                      ws.chain[bidx].second, w);
                    for (std::size_t r = 0; r < coords.size(); ++r) {
                        eb[r][bidx] = coords[r];
                        if (!eb[r][bidx].is_zero()) nonzero = true;
                    }
                }
                if (nonzero) ws.e_out.emplace(i, std::move(eb));
            }
        }
        if (!any_dim && kind_ == Kind::Irreducible) break;
        level = std::move(next_level);
    }

    weight_list_.clear();
    for (auto& [w, s] : spaces_)
        if (s.dim > 0) weight_list_.push_back(w);
}

void Module::rebuild_at_weight(const Module& skeleton, const Weight& mu) {
    highest_ = mu;
    spaces_.clear();
    struct Item {
        long height;
        Weight w;
        const WSpace* src;
    };
    std::vector<Item> items;
    for (auto& [ws, sp] : skeleton.spaces_) {
        Weight drop = Weight(skeleton.highest_.coords()) - Weight(ws.coords());
        auto ac = integer_coords(alpha_coords(rs_, drop));
        long h = std::accumulate(ac->begin(), ac->end(), 0L);
        items.push_back({h, mu - drop, &sp});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.height != b.height) return a.height < b.height;
        return a.w < b.w;
    });
    for (auto& item : items) {
        WSpace ws;
        ws.dim = item.src->dim;
        ws.chain = item.src->chain;
        ws.f_in = item.src->f_in;
        if (item.height == 0) {
            ws.gram = {{Scalar(1)}};
            spaces_.emplace(item.w, std::move(ws));
            continue;
        }
        WSpace& cur = spaces_.emplace(item.w, std::move(ws)).first->second;
        if (cur.dim == 0) continue;
        const Weight& w = item.w;
        for (int i = 0; i < rs_.rank(); ++i) {
            auto tit = spaces_.find(w + rs_.alpha(i));
            if (tit == spaces_.end() || tit->second.dim == 0) continue;
            DMat eb = dmat(tit->second.dim, cur.dim);
            bool nonzero = false;
            for (int bidx = 0; bidx < cur.dim; ++bidx) {
                DVec coords = e_into_parent_space(i, cur.chain[bidx].first,
                                                  cur.chain[bidx].second, w);
                for (std::size_t r = 0; r < coords.size(); ++r) {
                    eb[r][bidx] = coords[r];
                    if (!eb[r][bidx].is_zero()) nonzero = true;
                }
            }
            if (nonzero) cur.e_out.emplace(i, std::move(eb));
        }
        // gram matrices are filled lazily on demand
    }
    weight_list_.clear();
    for (auto& [w, s] : spaces_)
        if (s.dim > 0) weight_list_.push_back(w);
}

// ---------------------------------------------------------------------------
// constructors

ModulePtr Module::verma(const RootSystem& rs, const Weight& mu, std::vector<long> depth_box) {
    if (depth_box.size() != static_cast<std::size_t>(rs.rank()))
        throw precondition_error("depth box rank mismatch");
    struct Key {
        std::string sys;
        std::vector<long> box;
        bool operator<(const Key& o) const {
            if (sys != o.sys) return sys < o.sys;
            return box < o.box;
        }
    };
    static std::map<Key, ModulePtr> cache;
    static std::mutex mtx;
    ModulePtr skel;
    {
        std::lock_guard<std::mutex> lock(mtx);
        Key key{rs.str(), depth_box};
        auto it = cache.find(key);
        if (it != cache.end()) {
            skel = it->second;
        } else {
            skel = ModulePtr(new Module(rs));
            skel->kind_ = Kind::Verma;
            skel->alpha_box_ = depth_box;
            skel->highest_ = reference_weight(rs);
            skel->name_ = "Verma(" + skel->highest_.str() + ")";
            skel->sweep(false, 1 + std::accumulate(depth_box.begin(), depth_box.end(), 0L));
            cache.emplace(key, skel);
        }
    }
    if (mu == skel->highest()) return skel;
    ModulePtr m(new Module(rs));
    m->kind_ = Kind::Verma;
    m->alpha_box_ = depth_box;
    m->name_ = "Verma(" + mu.str() + ")";
    m->rebuild_at_weight(*skel, mu);
    return m;
}

ModulePtr Module::irreducible(const RootSystem& rs, const Weight& nu) {
    if (!rs.is_dominant_integral(nu))
        throw precondition_error("irreducible module needs a dominant integral weight");
    ModulePtr m(new Module(rs));
    m->kind_ = Kind::Irreducible;
    m->highest_ = nu;
    m->name_ = "V(" + nu.str() + ")";
    m->sweep(true, 1000000);
    if (m->total_dim() != rs.weyl_dim(nu))
        throw precondition_error("irreducible build dimension mismatch at " + nu.str());
    return m;
}

ModulePtr Module::base_module(const RootSystem& rs, std::vector<long> eps_box, BaseRoute route) {
    if (rs.type() != LieType::B || eps_box.size() != static_cast<std::size_t>(rs.rank()))
        throw precondition_error("base module needs type B and a full eps box");
    ModulePtr m(new Module(rs));
    m->kind_ = Kind::Base;
    m->highest_ = rs.lambda_weight();
    m->name_ = "M[so(" + std::to_string(2 * rs.rank() + 1) + ")]";
    if (route == BaseRoute::Propagate) m->build_base_from_verma(eps_box);
    else m->build_base_by_pairings(eps_box);
    return m;
}

ModulePtr Module::tensor(ModulePtr left, ModulePtr right, Coproduct conv) {
    if (left->kind_ == Kind::Tensor || right->kind_ == Kind::Tensor)
        throw precondition_error("nested tensor handles are not supported");
    ModulePtr m(new Module(left->rs_));
    m->kind_ = Kind::Tensor;
    m->left_ = std::move(left);
    m->right_ = std::move(right);
    m->conv_ = conv;
    m->highest_ = m->left_->highest_ + m->right_->highest_;
    m->name_ = m->left_->name_ + " (x) " + m->right_->name_;
    return m;
}

// ---------------------------------------------------------------------------
// Base-module construction. The defining commutation relations on the
// multiplicity-free eps-monomial lattice pin every structure constant up to
// per-site basis gauge: with f_i moving sites by d_i and e_i back,
//
//   a_i(x + d_i) b_i(x) - b_i(x - d_i) a_i(x) = [(w_x, alpha_i)]_q
//   a_i(x + d_j) b_j(x) = b_j(x - d_i) a_i(x)        (i != j)
//
// propagate layer by layer from 1_lambda, one division per edge. Cycle
// consistency and agreement of the contravariant norm across parents are
// checked at every site. An independent word-pairing construction of the same
// table is kept for cross-validation at small windows.

namespace {

LoweringWord staircase_word(const std::vector<long>& m) {
    LoweringWord w;
    for (int i = static_cast<int>(m.size()) - 1; i >= 0; --i)
        for (long k = 0; k < m[i]; ++k)
            for (int j = i; j >= 0; --j) w.push_back(j);
    return w;
}

} // namespace

void Module::build_base_by_pairings(const std::vector<long>& nominal_box) {
    int n = rs_.rank();
    eps_box_ = nominal_box;
    WordPairer pairer(rs_, highest_);

    std::vector<std::vector<long>> sites;
    std::vector<long> tmp(nominal_box.size(), 0);
    std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
        if (i == nominal_box.size()) {
            sites.push_back(tmp);
            return;
        }
        for (long v = 0; v <= nominal_box[i]; ++v) {
            tmp[i] = v;
            enumerate(i + 1);
        }
    };
    enumerate(0);

    std::map<std::vector<long>, LoweringWord> words;
    std::map<std::vector<long>, Scalar> norms;
    for (auto& m : sites) {
        LoweringWord w = staircase_word(m);
        Scalar nrm = pairer.pair(w, w);
        if (nrm.is_zero())
            throw precondition_error("base-module site word vanishes in the quotient at " +
                                     weight_of_site(m).str());
        words.emplace(m, std::move(w));
        norms.emplace(m, std::move(nrm));
        WSpace ws;
        ws.dim = 1;
        ws.gram = {{norms.at(m)}};
        spaces_.emplace(weight_of_site(m), std::move(ws));
    }

    auto site_at = [&](const Weight& w) -> std::optional<std::vector<long>> {
        auto m = site_of(w);
        if (!m) return std::nullopt;
        for (std::size_t i = 0; i < m->size(); ++i)
            if ((*m)[i] > nominal_box[i]) return std::nullopt;
        return m;
    };

    for (auto& m : sites) {
        Weight w = weight_of_site(m);
        const LoweringWord& sw = words.at(m);
        for (int i = 0; i < n; ++i) {
            Weight fw = w - rs_.alpha(i);
            auto fm = site_at(fw);
            if (fm) {
                LoweringWord ext;
                ext.reserve(sw.size() + 1);
                ext.push_back(i);
                ext.insert(ext.end(), sw.begin(), sw.end());
                Scalar c = pairer.pair(words.at(*fm), ext) / norms.at(*fm);
                if (!c.is_zero()) spaces_.at(fw).f_in.emplace(i, DMat{{c}});
            }
            Weight ew = w + rs_.alpha(i);
            auto em = site_at(ew);
            if (em) {
                WordCombo combo = commute_e_through(rs_, i, sw, highest_);
                Scalar c;
                for (auto& [word, coeff] : combo) {
                    Scalar pr = pairer.pair(words.at(*em), word);
                    if (!pr.is_zero()) c += coeff * pr;
                }
                c = c / norms.at(*em);
                if (!c.is_zero()) spaces_.at(w).e_out.emplace(i, DMat{{c}});
            }
        }
    }
    finish_base_chains();
}

void Module::build_base_from_verma(const std::vector<long>& nominal_box) {
    int n = rs_.rank();
    std::vector<long> internal = nominal_box;
    for (auto& bx : internal) bx += 1; // one spare layer, trimmed afterwards
    eps_box_ = internal;

    // site enumeration by alpha-height
    std::vector<std::vector<long>> sites;
    std::vector<long> tmp(internal.size(), 0);
    std::function<void(std::size_t)> enumerate = [&](std::size_t i) {
        if (i == internal.size()) {
            sites.push_back(tmp);
            return;
        }
        for (long v = 0; v <= internal[i]; ++v) {
            tmp[i] = v;
            enumerate(i + 1);
        }
    };
    enumerate(0);
    auto aheight = [](const std::vector<long>& m) {
        long h = 0;
        for (std::size_t i = 0; i < m.size(); ++i) h += m[i] * (static_cast<long>(i) + 1);
        return h;
    };
    std::sort(sites.begin(), sites.end(), [&](const auto& a, const auto& b) {
        long ha = aheight(a), hb = aheight(b);
        if (ha != hb) return ha < hb;
        return a < b;
    });
    std::map<std::vector<long>, long> site_index;
    for (std::size_t k = 0; k < sites.size(); ++k) site_index.emplace(sites[k], (long)k);

    // move by d_i: f_i adds u_i and removes u_{i-1}
    auto move_f = [&](std::vector<long> m, int i) {
        m[i] += 1;
        if (i > 0) m[i - 1] -= 1;
        return m;
    };
    auto move_e = [&](std::vector<long> m, int i) {
        m[i] -= 1;
        if (i > 0) m[i - 1] += 1;
        return m;
    };
    auto in_box = [&](const std::vector<long>& m) {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] < 0 || m[i] > internal[i]) return false;
        return true;
    };
    auto in_support_f = [&](const std::vector<long>& m, int i) {
        return i == 0 || m[i - 1] >= 1;
    };
    auto in_support_e = [&](const std::vector<long>& m, int i) { return m[i] >= 1; };

    // a[i], b[i] keyed by site index; absent = not yet known
    std::vector<std::map<long, Scalar>> A(n), B(n);
    auto negative_site = [](const std::vector<long>& m) {
        for (long c : m)
            if (c < 0) return true;
        return false;
    };
    auto known_a = [&](int i, const std::vector<long>& m, Scalar& out) {
        if (negative_site(m) || !in_support_e(m, i)) { out = Scalar(0); return true; }
        auto it = site_index.find(m);
        if (it == site_index.end()) return false;
        auto v = A[i].find(it->second);
        if (v == A[i].end()) return false;
        out = v->second;
        return true;
    };
    auto known_b = [&](int i, const std::vector<long>& m, Scalar& out) {
        if (negative_site(m) || !in_support_f(m, i)) { out = Scalar(0); return true; }
        auto it = site_index.find(m);
        if (it == site_index.end()) return false;
        auto v = B[i].find(it->second);
        if (v == B[i].end()) return false;
        out = v->second;
        return true;
    };
    auto hq_at = [&](const std::vector<long>& m, int i) {
        Weight w = weight_of_site(m);
        return qnum(inner(w, rs_.alpha(i)).exp(), QBase::Q);
    };

    long hmax = aheight(internal);
    for (long h = 0; h <= hmax; ++h) {
        // edges of this layer: (a_i at x+d_j, b_j at x) with value
        struct Edge {
            int ai, bj;
            std::vector<long> y, x;
            Scalar value;
        };
        std::vector<Edge> edges;
        for (auto& x : sites) {
            if (aheight(x) != h) continue;
            for (int j = 0; j < n; ++j) {
                if (!in_support_f(x, j)) continue;
                std::vector<long> y0 = move_f(x, j);
                if (!in_box(y0)) continue;
                for (int i = 0; i < n; ++i) {
                    std::vector<long> y = move_f(x, j);
                    if (!in_support_e(y, i)) continue; // a_i(y) = 0 boundary
                    Scalar val;
                    if (i == j) {
                        Scalar bprev, acur;
                        std::vector<long> xm = move_e(x, i);
                        if (!known_b(i, xm, bprev)) continue;
                        if (!known_a(i, x, acur)) continue;
                        val = bprev * acur + hq_at(x, i);
                    } else {
                        Scalar bshift, acur;
                        std::vector<long> xm = move_e(x, i);
                        if (!known_b(j, xm, bshift)) continue;
                        if (!known_a(i, x, acur)) continue;
                        val = bshift * acur;
                    }
                    edges.push_back({i, j, y, x, std::move(val)});
                }
            }
        }
        // division chasing with per-component gauge anchors
        bool progress = true;
        auto resolve = [&]() {
            progress = true;
            while (progress) {
                progress = false;
                for (auto& e : edges) {
                    Scalar av, bv;
                    bool ka = known_a(e.ai, e.y, av);
                    bool kb = known_b(e.bj, e.x, bv);
                    if (ka && kb) {
                        if (av * bv != e.value)
                            throw precondition_error(
                                "base-module relations are inconsistent at " +
                                weight_of_site(e.x).str());
                        continue;
                    }
                    if (ka && !kb) {
                        if (av.is_zero()) {
                            if (!e.value.is_zero())
                                throw precondition_error("zero against nonzero relation value");
                            continue; // b stays undetermined by this edge
                        }
                        B[e.bj][site_index.at(e.x)] = e.value / av;
                        progress = true;
                    } else if (!ka && kb) {
                        if (bv.is_zero()) {
                            if (!e.value.is_zero())
                                throw precondition_error("zero against nonzero relation value");
                            continue;
                        }
                        A[e.ai][site_index.at(e.y)] = e.value / bv;
                        progress = true;
                    }
                }
            }
        };
        resolve();
        // gauge anchors for components untouched by knowns
        while (true) {
            const Edge* anchor = nullptr;
            for (auto& e : edges) {
                Scalar av, bv;
                if (!known_a(e.ai, e.y, av) && !known_b(e.bj, e.x, bv) && !e.value.is_zero()) {
                    anchor = &e;
                    break;
                }
            }
            if (!anchor) break;
            B[anchor->bj][site_index.at(anchor->x)] = Scalar(1);
            resolve();
        }
    }

    // materialize spaces, blocks, and norms
    std::map<std::vector<long>, Scalar> norms;
    for (auto& m : sites) {
        WSpace ws;
        ws.dim = 1;
        spaces_.emplace(weight_of_site(m), std::move(ws));
    }
    norms[sites.front()] = Scalar(1);
    for (auto& m : sites) {
        if (aheight(m) == 0) continue;
        Weight w = weight_of_site(m);
        Scalar nval;
        bool have = false;
        for (int i = 0; i < n; ++i) {
            if (!in_support_e(m, i)) continue;
            std::vector<long> x = move_e(m, i);
            if (!in_box(x)) continue;
            Scalar av, bv;
            if (!known_a(i, m, av) || !known_b(i, x, bv)) continue;
            auto nx = norms.find(x);
            if (nx == norms.end()) continue;
            if (bv.is_zero())
                throw precondition_error("vanishing lattice factor b at " + w.str());
            Scalar cand = av / bv * nx->second;
            if (!have) {
                nval = cand;
                have = true;
            } else if (cand != nval) {
                throw precondition_error("norm inconsistency across parents at " + w.str());
            }
        }
        if (!have) throw precondition_error("unreachable base-module site " + w.str());
        norms[m] = nval;
        spaces_.at(w).gram = {{nval}};
    }
    spaces_.at(highest_).gram = {{Scalar(1)}};
    for (auto& m : sites) {
        Weight w = weight_of_site(m);
        for (int i = 0; i < n; ++i) {
            Scalar bv;
            std::vector<long> y = move_f(m, i);
            if (in_box(y) && known_b(i, m, bv) && !bv.is_zero())
                spaces_.at(weight_of_site(y)).f_in.emplace(i, DMat{{bv}});
            Scalar av;
            if (known_a(i, m, av) && !av.is_zero()) {
                std::vector<long> x = move_e(m, i);
                if (in_box(x)) spaces_.at(w).e_out.emplace(i, DMat{{av}});
            }
        }
    }
    finish_base_chains();
    trim_to_box(nominal_box);
}

void Module::finish_base_chains() {
    for (auto& [w, ws] : spaces_) {
        if (w == highest_ || ws.dim == 0) continue;
        for (int i = 0; i < rs_.rank(); ++i) {
            auto fit = ws.f_in.find(i);
            if (fit == ws.f_in.end() || fit->second[0][0].is_zero()) continue;
            if (!spaces_.count(w + rs_.alpha(i))) continue;
            ws.chain.emplace_back(i, 0);
            ws.chain_coeff.emplace_back(fit->second[0][0].inverse());
            break;
        }
        if (ws.chain.empty())
            throw precondition_error("base-module site " + w.str() + " has no lattice parent");
    }
    weight_list_.clear();
    for (auto& [w, sp] : spaces_)
        if (sp.dim > 0) weight_list_.push_back(w);
}

void Module::trim_to_box(const std::vector<long>& nominal_box) {
    eps_box_ = nominal_box;
    for (auto it = spaces_.begin(); it != spaces_.end();) {
        auto m = site_of(it->first);
        bool keep = m.has_value();
        if (keep)
            for (std::size_t i = 0; i < m->size(); ++i)
                if ((*m)[i] > nominal_box[i]) keep = false;
        it = keep ? std::next(it) : spaces_.erase(it);
    }
    for (auto& [w, sp] : spaces_) {
        for (auto it = sp.f_in.begin(); it != sp.f_in.end();)
            it = spaces_.count(w + rs_.alpha(it->first)) ? std::next(it) : sp.f_in.erase(it);
        for (auto it = sp.e_out.begin(); it != sp.e_out.end();)
            it = spaces_.count(w + rs_.alpha(it->first)) ? std::next(it) : sp.e_out.erase(it);
    }
    weight_list_.clear();
    for (auto& [w, s] : spaces_)
        if (s.dim > 0) weight_list_.push_back(w);
}

std::pair<LoweringWord, Scalar> Module::section_word(const Weight& w, int idx,
                                                     bool alternate) const {
    if (kind_ == Kind::Tensor) throw precondition_error("section word of a tensor handle");
    LoweringWord word;
    Scalar c(1);
    Weight cur = w;
    int cidx = idx;
    while (!(cur == highest_)) {
        const WSpace& sp = spaces_.at(cur);
        int gen = sp.chain[cidx].first;
        int pidx = sp.chain[cidx].second;
        Scalar entry(1); // chain candidates expand to unit vectors
        if (alternate && sp.dim == 1) {
            int bg = -1, bp = -1;
            Scalar be;
            for (auto& [i, fb] : sp.f_in)
                for (std::size_t u = 0; u < fb[cidx].size(); ++u)
                    if (!fb[cidx][u].is_zero()) {
                        bg = i;
                        bp = static_cast<int>(u);
                        be = fb[cidx][u];
                    }
            if (bg >= 0) {
                gen = bg;
                pidx = bp;
                entry = be;
            }
        } else if (kind_ == Kind::Base) {
            // rescaled blocks: read the stored entry for the chain step
            auto fit = sp.f_in.find(gen);
            entry = fit->second[cidx][pidx];
        }
        word.push_back(gen);
        c *= entry;
        cur = cur + rs_.alpha(gen);
        cidx = pidx;
    }
    return {word, c};
}

// ---------------------------------------------------------------------------
// tensor lazy data

const std::vector<Module::TensorLabel>& Module::tensor_labels(const Weight& w) const {
    std::lock_guard<std::recursive_mutex> lock(lazy_mtx_);
    auto it = tlabels_.find(w);
    if (it != tlabels_.end()) return it->second;
    std::vector<TensorLabel> labs;
    for (auto& wl : left_->weights()) {
        int dl = left_->dim(wl);
        if (dl == 0) continue;
        Weight wr = w - wl;
        if (right_->place(wr) != Place::Inside) continue;
        int dr = right_->dim(wr);
        for (int il = 0; il < dl; ++il)
            for (int ir = 0; ir < dr; ++ir) labs.push_back({wl, il, wr, ir});
    }
    return tlabels_.emplace(w, std::move(labs)).first->second;
}

DMat Module::build_tensor_block(bool lowering, int i, const Weight& from) const {
    const auto& src = tensor_labels(from);
    Weight to = lowering ? from - rs_.alpha(i) : from + rs_.alpha(i);
    const auto& dst = tensor_labels(to);
    std::map<std::pair<Weight, std::pair<int, int>>, int> index;
    for (std::size_t r = 0; r < dst.size(); ++r)
        index[{dst[r].wl, {dst[r].il, dst[r].ir}}] = static_cast<int>(r);
    auto find_dst = [&](const Weight& wl, int il, int ir) -> int {
        auto it = index.find({wl, {il, ir}});
        return it == index.end() ? -1 : it->second;
    };
    DMat blk = dmat(dst.size(), src.size());
    for (std::size_t cidx = 0; cidx < src.size(); ++cidx) {
        const TensorLabel& lb = src[cidx];
        const DMat* bl = lowering ? left_->f_block(i, lb.wl) : left_->e_block(i, lb.wl);
        if (bl) {
            Weight wl2 = lowering ? lb.wl - rs_.alpha(i) : lb.wl + rs_.alpha(i);
            Scalar cl(1);
            if (conv_ == Coproduct::Sec3)
                cl = lowering ? Scalar(1) : q_power(inner(lb.wr, rs_.alpha(i)).exp());
            else
                cl = lowering ? q_power(inner(lb.wr, rs_.alpha(i)).exp().scaled(-1)) : Scalar(1);
            for (std::size_t r = 0; r < bl->size(); ++r) {
                if ((*bl)[r][lb.il].is_zero()) continue;
                int dr = find_dst(wl2, static_cast<int>(r), lb.ir);
                if (dr >= 0) blk[dr][cidx] += cl * (*bl)[r][lb.il];
            }
        }
        const DMat* br = lowering ? right_->f_block(i, lb.wr) : right_->e_block(i, lb.wr);
        if (br) {
            Weight wr2 = lowering ? lb.wr - rs_.alpha(i) : lb.wr + rs_.alpha(i);
            (void)wr2;
            Scalar cr(1);
            if (conv_ == Coproduct::Sec3)
                cr = lowering ? q_power(inner(lb.wl, rs_.alpha(i)).exp().scaled(-1)) : Scalar(1);
            else
                cr = lowering ? Scalar(1) : q_power(inner(lb.wl, rs_.alpha(i)).exp());
            for (std::size_t r = 0; r < br->size(); ++r) {
                if ((*br)[r][lb.ir].is_zero()) continue;
                int dr = find_dst(lb.wl, lb.il, static_cast<int>(r));
                if (dr >= 0) blk[dr][cidx] += cr * (*br)[r][lb.ir];
            }
        }
    }
    return blk;
}

// ---------------------------------------------------------------------------
// block lookup and application

Module::BlockStatus Module::lookup_block(bool lowering, int i, const Weight& from,
                                         const DMat** out) const {
    Weight to = lowering ? from - rs_.alpha(i) : from + rs_.alpha(i);
    Place pl = place(to);
    if (pl == Place::OutsideSupport) return BlockStatus::Zero;
    if (pl == Place::OutsideWindow) return BlockStatus::Window;
    if (kind_ == Kind::Tensor) {
        std::lock_guard<std::recursive_mutex> lock(lazy_mtx_);
        if (tensor_labels(to).empty()) return BlockStatus::Zero;
        auto key = std::make_pair(lowering ? i : i + 1000, from);
        auto it = tblock_cache_.find(key);
        if (it == tblock_cache_.end())
            it = tblock_cache_.emplace(key, build_tensor_block(lowering, i, from)).first;
        if (it->second.empty()) return BlockStatus::Zero;
        *out = &it->second;
        return BlockStatus::Ok;
    }
    auto tit = spaces_.find(to);
    if (tit == spaces_.end() || tit->second.dim == 0) return BlockStatus::Zero;
    if (lowering) {
        auto fit = tit->second.f_in.find(i);
        if (fit == tit->second.f_in.end()) return BlockStatus::Zero;
        *out = &fit->second;
        return BlockStatus::Ok;
    }
    auto sit = spaces_.find(from);
    if (sit == spaces_.end() || sit->second.dim == 0) return BlockStatus::Zero;
    auto eit = sit->second.e_out.find(i);
    if (eit == sit->second.e_out.end()) return BlockStatus::Zero;
    *out = &eit->second;
    return BlockStatus::Ok;
}

ModVec Module::apply(const OpPtr& op, const ModVec& v,
                     const std::optional<GaussQ>& t_sub) const {
    if (v.mod != this) throw precondition_error("vector belongs to a different module");
    auto coeff_eval = [&](const Scalar& c) -> Scalar {
        if (!t_sub) return c;
        auto r = c.substitute_t(*t_sub);
        if (!r) throw pole_error("coefficient pole at the sample point", 0);
        return *r;
    };
    switch (op->node) {
        case OpExpr::Node::GenE:
        case OpExpr::Node::GenF: {
            bool lowering = op->node == OpExpr::Node::GenF;
            ModVec out = zero_vec();
            out.overflow = v.overflow;
            for (auto& [w, coords] : v.comps) {
                bool nonzero = false;
                for (auto& x : coords)
                    if (!x.is_zero()) { nonzero = true; break; }
                if (!nonzero) continue;
                const DMat* blk = nullptr;
                BlockStatus st = lookup_block(lowering, op->root, w, &blk);
                if (st == BlockStatus::Window) {
                    out.overflow = true;
                    continue;
                }
                if (st == BlockStatus::Zero) continue;
                Weight to = lowering ? w - rs_.alpha(op->root) : w + rs_.alpha(op->root);
                DVec& dst = out.comps.try_emplace(to, DVec(blk->size())).first->second;
                for (std::size_t r = 0; r < blk->size(); ++r)
                    for (std::size_t c = 0; c < coords.size(); ++c)
                        if (!(*blk)[r][c].is_zero() && !coords[c].is_zero())
                            dst[r] += (*blk)[r][c] * coords[c];
            }
            return out;
        }
        case OpExpr::Node::GenK: {
            ModVec out = v;
            for (auto& [w, coords] : out.comps) {
                Scalar f = k_scalar(op->root, w, op->k_exp);
                for (auto& x : coords) x *= f;
            }
            return out;
        }
        case OpExpr::Node::Cartan: {
            ModVec out = v;
            for (auto& [w, coords] : out.comps) {
                Scalar f = coeff_eval(op->fn(w));
                for (auto& x : coords) x *= f;
            }
            return out;
        }
        case OpExpr::Node::Scale:
            return apply(op->kids[0], v, t_sub).scaled(coeff_eval(op->coeff));
        case OpExpr::Node::Sum: {
            ModVec out = zero_vec();
            out.overflow = v.overflow;
            for (auto& k : op->kids) out.add_scaled(apply(k, v, t_sub), Scalar(1));
            return out;
        }
        case OpExpr::Node::Compose: {
            ModVec cur = v;
            for (auto it = op->kids.rbegin(); it != op->kids.rend(); ++it)
                cur = apply(*it, cur, t_sub);
            return cur;
        }
        case OpExpr::Node::Pi:
            return apply_pi(*op, v, t_sub);
    }
    throw precondition_error("bad operator node");
}

ModVec Module::apply_pi(const OpExpr& node, const ModVec& v,
                        const std::optional<GaussQ>& t_sub) const {
    auto coeff_eval = [&](const Scalar& c) -> Scalar {
        if (!t_sub) return c;
        auto r = c.substitute_t(*t_sub);
        if (!r) throw pole_error("projector coefficient pole at the sample point", 0);
        return *r;
    };
    int i = node.root;
    bool short_root = rs_.short_root(i);
    QBase base = short_root ? QBase::P : QBase::Q;
    Scalar norm_fac = short_root ? qnum(ExpLin(2), QBase::P) : Scalar(1);
    if (node.pi_transposed && node.shift.h_slope != 0)
        throw precondition_error("transposed projector with h-dependent argument");

    ModVec out = zero_vec();
    out.overflow = v.overflow;
    OpPtr up = gen_e(i), down = gen_f(i);
    for (auto& [w, coords] : v.comps) {
        ModVec comp = zero_vec();
        comp.comps.emplace(w, coords);
        out.add_scaled(comp, Scalar(1)); // k = 0 term
        ModVec cur = comp;
        // argument and Cartan content evaluate at the input weight, exactly
        // as the series is written; vanishing denominators are reported as
        // poles and the caller decides how to treat the weight space
        ExpLin s_val = node.shift.eval(inner(w, rs_.alpha(i)));
        ExpLin h_val = inner(w, rs_.alpha_covector(i)).exp();
        if (node.pi_transposed) h_val = -h_val;
        Scalar fact(1); // [k]_base!
        Scalar denomprod(1);
        Scalar sign_pow(1);
        ExpLin expo = s_val - h_val - ExpLin(1);
        Scalar step_num = coeff_eval(norm_fac * (short_root ? p_power(expo) : q_power(expo)));
        for (long k = 1;; ++k) {
            cur = apply(node.pi_transposed ? down : up, cur, t_sub);
            if (cur.overflow) {
                out.overflow = true;
                break;
            }
            cur.prune();
            if (cur.is_zero()) break;
            Scalar dk = coeff_eval(qnum(s_val + ExpLin(k), base));
            if (dk.is_zero())
                throw pole_error("projector denominator [s+" + std::to_string(k) +
                                     "] vanishes on weight " + w.str(),
                                 static_cast<int>(k));
            fact *= qnum(ExpLin(k), base);
            denomprod *= dk;
            sign_pow = -sign_pow * step_num;
            Scalar coeff = sign_pow / (fact * denomprod);
            ModVec term = cur;
            for (long j = 0; j < k && !term.overflow; ++j)
                term = apply(node.pi_transposed ? up : down, term, t_sub);
            if (term.overflow) {
                out.overflow = true;
                break;
            }
            out.add_scaled(term, coeff);
        }
    }
    return out;
}

ModVec Module::apply_word(const LoweringWord& w, const ModVec& v) const {
    ModVec cur = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) cur = apply(gen_f(*it), cur);
    return cur;
}

Scalar Module::pair(const ModVec& a, const ModVec& b) const {
    if (kind_ == Kind::Tensor)
        throw precondition_error("contravariant form is not stored on tensor handles");
    Scalar acc;
    for (auto& [w, ca] : a.comps) {
        auto it = b.comps.find(w);
        if (it == b.comps.end()) continue;
        const DMat& g = gram(w);
        for (std::size_t r = 0; r < ca.size(); ++r) {
            if (ca[r].is_zero()) continue;
            for (std::size_t c = 0; c < it->second.size(); ++c) {
                if (it->second[c].is_zero() || g[r][c].is_zero()) continue;
                acc += ca[r] * g[r][c] * it->second[c];
            }
        }
    }
    return acc;
}

DMat shapovalov_gram(const RootSystem& rs, const Weight& mu,
                     const std::vector<long>& depth_content) {
    auto words = words_of_content(depth_content);
    return word_gram(rs, words, mu);
}

} // namespace qorbit
