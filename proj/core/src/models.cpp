#include "voa/models.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace voa {

GradedSpace VertexAlgebra::space(int cap) const { return adjoint().space(cap); }

GradedVector VertexAlgebra::L(int n, const GradedVector& v) const { return adjoint().L(n, v); }

GradedVector Module::mode(const Label& v, int n, const Label& w) const {
    // Y(v)_n maps weight k to k + wt(v) - n - 1
    if (w.weight() + v.weight() - n - 1 < 0) return {};
    auto key = std::make_tuple(v, n, w);
    return cache_.get_or_compute(key, [&] { return compute_mode(v, n, w); });
}

GradedVector Module::mode(const GradedVector& v, int n, const GradedVector& w) const {
    GradedVector r;
    for (const auto& [lv, a] : v.terms())
        for (const auto& [lw, b] : w.terms()) r += mode(lv, n, lw).scaled(a * b);
    return r;
}

GradedVector Module::L(int n, const GradedVector& w) const {
    return mode(algebra().conformal_vector(), n + 1, w);
}

GradedSpace Module::space(int cap) const {
    GradedSpace s;
    s.name = name();
    s.delta = delta();
    s.dual = is_dual();
    s.cap = cap;
    for (int n = 0; n <= cap; ++n) {
        auto b = basis(n);
        if (!b.empty()) s.weights[n] = std::move(b);
    }
    return s;
}

GradedVector GeneratedModule::generator(int k, const Label& w) const {
    if (w.weight() + algebra().generator_weight() - k - 1 < 0) return {};
    return gen_cache_.get_or_compute({k, w}, [&] { return compute_generator(k, w); });
}

GradedVector GeneratedModule::generator(int k, const GradedVector& w) const {
    GradedVector r;
    for (const auto& [l, a] : w.terms()) r += generator(k, l).scaled(a);
    return r;
}

GradedVector GeneratedModule::compute_mode(const Label& v, int n, const Label& w) const {
    if (v.parts.empty()) return n == -1 ? GradedVector(w) : GradedVector();
    // v = u_{k} v'  with  Y(u_k v')_n = sum_l (-1)^l C(k,l) [u_{k-l} Y(v')_{n+l} - (-1)^k Y(v')_{k+n-l} u_l]
    const VertexAlgebra& alg = algebra();
    Label rest(std::vector<int>(v.parts.begin() + 1, v.parts.end()));
    int k = alg.generator_index(v.parts.front());
    int first_top = rest.weight() + w.weight() - n - 1;
    int second_top = w.weight() + alg.generator_weight() - 1;
    Rational sign_k = (k % 2 == 0) ? Rational(1) : Rational(-1);
    GradedVector r;
    GradedVector wv(w);
    for (int l = 0; l <= std::max(first_top, second_top); ++l) {
        Rational c = binomial(k, l);
        if (c.is_zero()) continue;
        if (l % 2 == 1) c = -c;
        if (l <= first_top) r += generator(k - l, mode(GradedVector(rest), n + l, wv)).scaled(c);
        if (l <= second_top) r -= mode(GradedVector(rest), k + n - l, generator(l, w)).scaled(c * sign_k);
    }
    return r;
}

FockModule::FockModule(const VertexAlgebra& alg, Rational mu) : GeneratedModule(alg), mu_(std::move(mu)) {}

std::string FockModule::name() const { return "F_" + mu_.str(); }

GradedVector FockModule::compute_generator(int k, const Label& w) const {
    if (k < 0) {
        std::vector<int> p = w.parts;
        p.push_back(-k);
        return GradedVector(Label(std::move(p)));
    }
    if (k == 0) return GradedVector(w, mu_);
    auto it = std::find(w.parts.begin(), w.parts.end(), k);
    if (it == w.parts.end()) return {};
    long mult = std::count(w.parts.begin(), w.parts.end(), k);
    std::vector<int> p = w.parts;
    p.erase(std::find(p.begin(), p.end(), k));
    return GradedVector(Label(std::move(p)), Rational(mult * k));
}

VirasoroModule::VirasoroModule(const VertexAlgebra& alg, Rational h, bool vacuum)
    : GeneratedModule(alg), h_(std::move(h)), vacuum_(vacuum) {
    if (vacuum_ && !h_.is_zero()) throw std::invalid_argument("vacuum module needs h = 0");
}

std::string VirasoroModule::name() const {
    return vacuum_ ? "V_c=" + algebra().central_charge().str()
                   : "M(c=" + algebra().central_charge().str() + ",h=" + h_.str() + ")";
}

std::vector<Label> VirasoroModule::basis(int weight) const {
    return partitions(weight, vacuum_ ? 2 : 1);
}

GradedVector VirasoroModule::apply(int n, const GradedVector& w) const {
    GradedVector r;
    for (const auto& [l, a] : w.terms()) r += virasoro(n, l).scaled(a);
    return r;
}

GradedVector VirasoroModule::compute_generator(int k, const Label& w) const {
    int n = k - 1;  // u_k = L_{k-1}
    if (w.parts.empty()) {
        if (n <= (vacuum_ ? -2 : -1)) return GradedVector(Label({-n}));
        if (n == 0) return GradedVector(w, h_);
        return {};
    }
    int p = w.parts.front();
    if (-n >= p) {
        std::vector<int> parts = w.parts;
        parts.insert(parts.begin(), -n);
        return GradedVector(Label(std::move(parts)));
    }
    // L_n L_{-p} X = L_{-p} L_n X + (n+p) L_{n-p} X + delta_{n,p} (n^3-n)c/12 X
    Label rest(std::vector<int>(w.parts.begin() + 1, w.parts.end()));
    GradedVector r = apply(-p, virasoro(n, rest));
    if (n + p != 0) r += virasoro(n - p, rest).scaled(Rational(n + p));
    if (n == p) {
        Rational nn(n);
        r += GradedVector(rest, (nn * nn * nn - nn) * algebra().central_charge() / Rational(12));
    }
    return r;
}

HeisenbergAlgebra::HeisenbergAlgebra() : vacuum_(std::make_unique<FockModule>(*this, Rational(0))) {}

GradedVector HeisenbergAlgebra::conformal_vector() const {
    return GradedVector(Label({1, 1}), Rational(1, 2));
}

VirasoroAlgebra::VirasoroAlgebra(Rational c)
    : c_(std::move(c)), vacuum_(std::make_unique<VirasoroModule>(*this, Rational(0), true)) {}

ContragredientModule::ContragredientModule(const Module& base) : Module(base.algebra()), base_(&base) {}

GradedVector ContragredientModule::compute_mode(const Label& v, int n, const Label& w) const {
    int wv = v.weight();
    int target = w.weight() + wv - n - 1;
    if (target < 0) return {};
    std::vector<Label> rows = base_->basis(target);
    Rational sign = (wv % 2 == 0) ? Rational(1) : Rational(-1);
    GradedVector x(v);  // L_1^m v / m!
    GradedVector r;
    for (int m = 0; m <= wv && !x.is_zero(); ++m) {
        if (m > 0) x = algebra().L(1, x).scaled(Rational(1, m));
        int k = -n - m - 2 + 2 * wv;
        for (const auto& a : rows) {
            Rational c = base_->mode(x, k, GradedVector(a)).coeff(w);
            if (!c.is_zero()) r.add(a, sign * c);
        }
    }
    return r;
}

std::unique_ptr<ContragredientModule> contragredient(const Module& base) {
    return std::make_unique<ContragredientModule>(base);
}

std::shared_ptr<HeisenbergAlgebra> heisenberg_model() { return std::make_shared<HeisenbergAlgebra>(); }

std::shared_ptr<VirasoroAlgebra> virasoro_model(const Rational& c) {
    return std::make_shared<VirasoroAlgebra>(c);
}

int homogeneous_weight(const GradedVector& v) {
    if (v.is_zero()) throw std::invalid_argument("zero vector has no weight");
    if (!v.is_homogeneous()) throw std::invalid_argument("vector " + v.str() + " is not homogeneous");
    return v.max_weight();
}

GradedVector ModeOperator::apply(const GradedVector& w) const {
    GradedVector r;
    for (const auto& [l, a] : w.terms()) {
        auto it = std::find(columns.begin(), columns.end(), l);
        if (it == columns.end())
            throw std::out_of_range("vector component " + l.str() + " is outside the source cap");
        std::size_t j = static_cast<std::size_t>(it - columns.begin());
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (!entries[i][j].is_zero()) r.add(rows[i], entries[i][j] * a);
    }
    return r;
}

ModeOperator mode_matrix(const Module& m, const GradedVector& v, int n, int cap, int target_cap) {
    ModeOperator op;
    op.source_cap = cap;
    int shift = v.is_zero() ? 0 : v.max_weight() - n - 1;
    int needed = std::max(0, cap + shift);
    op.target_cap = target_cap < 0 ? needed : target_cap;
    for (int k = 0; k <= cap; ++k)
        for (auto& l : m.basis(k)) op.columns.push_back(l);
    for (int k = 0; k <= op.target_cap; ++k)
        for (auto& l : m.basis(k)) op.rows.push_back(l);
    op.entries.assign(op.rows.size(), std::vector<Rational>(op.columns.size()));
    for (std::size_t j = 0; j < op.columns.size(); ++j) {
        const Label& src = op.columns[j];
        GradedVector img = m.mode(v, n, GradedVector(src));
        for (const auto& [l, a] : img.terms()) {
            if (v.is_homogeneous() && l.weight() != src.weight() + shift)
                throw std::logic_error("mode Y(v)_" + std::to_string(n) + " broke the grading rule");
            if (l.weight() > op.target_cap)
                throw std::out_of_range("image weight " + std::to_string(l.weight()) +
                                        " exceeds target cap " + std::to_string(op.target_cap));
            auto it = std::find(op.rows.begin(), op.rows.end(), l);
            op.entries[static_cast<std::size_t>(it - op.rows.begin())][j] = a;
        }
    }
    return op;
}

ModeOperator contragredient_mode(const Module& m, const Label& v, int n, int cap) {
    ContragredientModule dual(m);
    return mode_matrix(dual, GradedVector(v), n, cap);
}

namespace {

int top_weight(const GradedVector& v) { return v.max_weight(); }

Rational neg_one_pow(long e) { return (e % 2 == 0) ? Rational(1) : Rational(-1); }

}  // namespace

JacobiResult jacobi_check(const Module& mod, const GradedVector& u, const GradedVector& v,
                          const GradedVector& w, int m, int n, int h) {
    JacobiResult res;
    int wu = top_weight(u), wv = top_weight(v), ww = top_weight(w);
    res.iterate_range = {0, wu + wv - n - 1};
    if (m >= 0) res.iterate_range.hi = std::min(res.iterate_range.hi, m);
    res.first_range = {0, wv + ww - h - 1};
    res.second_range = {0, wu + ww - m - 1};
    if (n >= 0) {
        res.first_range.hi = std::min(res.first_range.hi, n);
        res.second_range.hi = std::min(res.second_range.hi, n);
    }
    const Module& adj = mod.algebra().adjoint();
    for (int l = res.iterate_range.lo; l <= res.iterate_range.hi; ++l) {
        Rational c = binomial(m, l);
        if (c.is_zero()) continue;
        res.lhs += mod.mode(adj.mode(u, n + l, v), m + h - l, w).scaled(c);
    }
    for (int l = res.first_range.lo; l <= res.first_range.hi; ++l) {
        Rational c = neg_one_pow(l) * binomial(n, l);
        if (c.is_zero()) continue;
        res.rhs += mod.mode(u, m + n - l, mod.mode(v, h + l, w)).scaled(c);
    }
    for (int l = res.second_range.lo; l <= res.second_range.hi; ++l) {
        Rational c = neg_one_pow(l + n) * binomial(n, l);
        if (c.is_zero()) continue;
        res.rhs -= mod.mode(v, n + h - l, mod.mode(u, m + l, w)).scaled(c);
    }
    res.pass = res.lhs == res.rhs;
    return res;
}

std::pair<GradedVector, GradedVector> commutator_sides(const Module& mod, const GradedVector& u,
                                                       const GradedVector& v,
                                                       const GradedVector& w, int m, int h) {
    GradedVector lhs = mod.mode(u, m, mod.mode(v, h, w)) - mod.mode(v, h, mod.mode(u, m, w));
    GradedVector rhs;
    const Module& adj = mod.algebra().adjoint();
    int top = top_weight(u) + top_weight(v) - 1;
    for (int l = 0; l <= top; ++l) {
        Rational c = binomial(m, l);
        if (c.is_zero()) continue;
        rhs += mod.mode(adj.mode(u, l, v), m + h - l, w).scaled(c);
    }
    return {lhs, rhs};
}

}  // namespace voa
