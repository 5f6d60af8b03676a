#include "voa/blocks.hpp"

#include <sstream>

namespace voa {

struct BlockFunctional::State {
    State(SpherePoints p, std::vector<const Module*> m, Rule r, std::vector<std::shared_ptr<const void>> k)
        : points(std::move(p)), modules(std::move(m)), rule(std::move(r)), keep(std::move(k)) {}

    SpherePoints points;
    std::vector<const Module*> modules;
    Rule rule;
    std::vector<std::shared_ptr<const void>> keep;
    Memo<std::vector<Label>, Rational> cache;
};

BlockFunctional::BlockFunctional(SpherePoints points, std::vector<const Module*> modules, Rule rule,
                                 std::vector<std::shared_ptr<const void>> keep_alive)
    : s_(std::make_shared<State>(std::move(points), std::move(modules), std::move(rule),
                                 std::move(keep_alive))) {
    if (s_->modules.size() != s_->points.size())
        throw std::invalid_argument("one module per marked point");
}

const SpherePoints& BlockFunctional::points() const { return s_->points; }
const Module& BlockFunctional::module(std::size_t i) const { return *s_->modules.at(i); }
std::size_t BlockFunctional::size() const { return s_->modules.size(); }

Rational BlockFunctional::operator()(const std::vector<Label>& labels) const {
    if (labels.size() != size()) throw std::invalid_argument("one vector per marked point");
    return s_->cache.get_or_compute(labels, [&] { return s_->rule(labels); });
}

Rational BlockFunctional::operator()(const std::vector<GradedVector>& ws) const {
    if (ws.size() != size()) throw std::invalid_argument("one vector per marked point");
    std::vector<Label> labels(ws.size());
    Rational total;
    std::function<void(std::size_t, const Rational&)> walk = [&](std::size_t i, const Rational& c) {
        if (i == ws.size()) {
            total += c * (*this)(labels);
            return;
        }
        for (const auto& [l, a] : ws[i].terms()) {
            labels[i] = l;
            walk(i + 1, c * a);
        }
    };
    walk(0, Rational(1));
    return total;
}

namespace {

std::map<int, GradedVector> by_weight(const GradedVector& v) {
    std::map<int, GradedVector> out;
    for (const auto& [l, a] : v.terms()) out[l.weight()].add(l, a);
    return out;
}

std::vector<Rational> finite_centers(const SpherePoints& pts) {
    std::vector<Rational> xs;
    for (std::size_t i : pts.finite_indices()) xs.push_back(pts[i].x);
    return xs;
}

std::vector<GradedVector> replaced(std::vector<GradedVector> ws, std::size_t i, GradedVector w) {
    ws[i] = std::move(w);
    return ws;
}

}  // namespace

GradedVector transposed_dual_mode(const Module& M, const GradedVector& u, int k, const GradedVector& w) {
    const VertexAlgebra& V = M.algebra();
    GradedVector r;
    for (const auto& [d, ud] : by_weight(u)) {
        GradedVector lm = ud;
        Rational sign = d % 2 ? Rational(-1) : Rational(1);
        for (int m = 0; m <= d && !lm.is_zero(); ++m) {
            r += M.mode(lm, 2 * d - k - m - 2, w).scaled(sign / factorial(m));
            lm = V.L(1, lm);
        }
    }
    return r;
}

GradedVector residue_action(const BlockFunctional& phi, std::size_t i, const SectionDatum& s,
                            const GradedVector& w) {
    const SpherePoints& pts = phi.points();
    const Module& M = phi.module(i);
    RationalFunction f = RationalFunction::product_of_powers(finite_centers(pts), s.exponents);
    int ww = w.max_weight();
    GradedVector r;
    if (ww < 0) return r;
    for (const auto& [d, ud] : by_weight(s.u)) {
        if (!pts[i].at_infinity) {
            // Res_t f(x_i + t) Y(u, t) w dt
            int top = d + ww - 1;
            TruncSeries e = f.expand(pts[i], top + 1);
            for (int k = e.floor(); k <= top; ++k) {
                Rational c = e.coeff(k);
                if (!c.is_zero()) r += M.mode(ud, k, w).scaled(c);
            }
        } else {
            // f = sum_k a_k zeta^k acts as -sum_k a_k (Y_{M'}(u)_k)^t, nonzero for -k <= ww + 1 - d
            TruncSeries e = f.expand(pts[i], ww + 2 - d);
            for (int j = e.floor(); j < e.order(); ++j) {
                Rational c = e.coeff(j);
                if (!c.is_zero()) r -= transposed_dual_mode(M, ud, -j, w).scaled(c);
            }
        }
    }
    return r;
}

Rational block_residue_sum(const BlockFunctional& phi, const SectionDatum& s,
                           const std::vector<GradedVector>& ws) {
    Rational total;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        GradedVector a = residue_action(phi, i, s, ws[i]);
        if (!a.is_zero()) total += phi(replaced(ws, i, a));
    }
    return total;
}

std::string BlockWitness::str() const {
    std::ostringstream os;
    os << "u = " << u.str() << ", exponents (";
    for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? ", " : "") << exponents[i];
    os << "), vectors (";
    for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? ", " : "") << labels[i].str();
    os << "): " << value.str();
    return os.str();
}

BlockCheckResult block_residue_check(const BlockFunctional& phi, int u_cap, int span, int w_cap) {
    const VertexAlgebra& V = phi.module(0).algebra();
    std::size_t F = phi.points().finite_indices().size();
    std::vector<Label> us;
    for (int n = 0; n <= u_cap; ++n)
        for (const auto& l : V.basis(n)) us.push_back(l);
    std::vector<std::vector<Label>> bases(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        for (int n = 0; n <= w_cap; ++n)
            for (const auto& l : phi.module(i).basis(n)) bases[i].push_back(l);

    BlockCheckResult res;
    std::vector<int> exps(F, -span);
    std::vector<std::size_t> idx(phi.size(), 0);
    auto next_exps = [&] {
        for (std::size_t j = 0; j < F; ++j) {
            if (++exps[j] <= span) return true;
            exps[j] = -span;
        }
        return false;
    };
    auto next_idx = [&] {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (++idx[j] < bases[j].size()) return true;
            idx[j] = 0;
        }
        return false;
    };
    for (const auto& u : us) {
        do {
            SectionDatum s{GradedVector(u), exps};
            std::fill(idx.begin(), idx.end(), 0);
            do {
                std::vector<GradedVector> ws;
                std::vector<Label> ls;
                for (std::size_t j = 0; j < idx.size(); ++j) {
                    ls.push_back(bases[j][idx[j]]);
                    ws.emplace_back(ls.back());
                }
                Rational v = block_residue_sum(phi, s, ws);
                ++res.checked;
                if (!v.is_zero()) {
                    res.pass = false;
                    res.witness = BlockWitness{u, exps, ls, v};
                    return res;
                }
            } while (next_idx());
        } while (next_exps());
    }
    return res;
}

GradedVector LinearMap::apply(const GradedVector& w) const {
    GradedVector r;
    for (const auto& [l, a] : w.terms()) {
        if (l.weight() > cap)
            throw std::out_of_range("linear map defined to weight " + std::to_string(cap) + ", got " + l.str());
        auto it = images.find(l);
        if (it != images.end()) r += it->second.scaled(a);
    }
    return r;
}

LinearMap LinearMap::identity(const Module& m, int cap) {
    LinearMap t;
    t.cap = cap;
    for (int n = 0; n <= cap; ++n)
        for (const auto& l : m.basis(n)) t.images.emplace(l, GradedVector(l));
    return t;
}

LinearMap LinearMap::scaled(const Rational& a) const {
    LinearMap t;
    t.cap = cap;
    for (const auto& [l, v] : images) t.images.emplace(l, v.scaled(a));
    return t;
}

std::string IntertwiningWitness::str() const {
    return "v = " + v.str() + ", n = " + std::to_string(n) + ", w = " + w.str() + ": T Y(v)_n w = " +
           lhs.str() + " but Y(v)_n T w = " + rhs.str();
}

IntertwiningError::IntertwiningError(IntertwiningWitness w)
    : std::invalid_argument("map does not intertwine: " + w.str()), w_(std::move(w)) {}

std::optional<IntertwiningWitness> intertwining_check(const Module& source, const Module& target,
                                                      const LinearMap& T, int v_cap) {
    const VertexAlgebra& V = source.algebra();
    // L0 first: a graded T is what lets the block vanish off matching weights
    const Label& c = V.conformal_vector().terms().begin()->first;
    for (const auto& [w, img] : T.images) {
        GradedVector lhs = T.apply(source.L(0, GradedVector(w)));
        GradedVector rhs = target.L(0, img);
        if (lhs != rhs) return IntertwiningWitness{c, 1, w, lhs, rhs};
    }
    for (int d = 0; d <= v_cap; ++d)
        for (const auto& v : V.basis(d))
            for (int a = 0; a <= T.cap; ++a)
                for (const auto& w : source.basis(a))
                    for (int n = a + d - 1 - T.cap; n <= a + d - 1; ++n) {
                        GradedVector lhs = T.apply(source.mode(GradedVector(v), n, GradedVector(w)));
                        GradedVector rhs = target.mode(GradedVector(v), n, T.apply(GradedVector(w)));
                        if (lhs != rhs) return IntertwiningWitness{v, n, w, lhs, rhs};
                    }
    return std::nullopt;
}

BlockFunctional hom_block(const Module& W1, const Module& W2, const LinearMap& T, int v_cap) {
    std::shared_ptr<const Module> target = contragredient(W2);
    if (auto w = intertwining_check(W1, *target, T, v_cap)) throw IntertwiningError(*w);
    SpherePoints pts({SpherePoint::finite(Rational(0)), SpherePoint::infinity()});
    Rational shift = W1.delta() - W2.delta();
    auto rule = [T, shift](const std::vector<Label>& l) {
        if (Rational(l[0].weight()) + shift != Rational(l[1].weight())) return Rational(0);
        return pair(T.apply(GradedVector(l[0])), GradedVector(l[1]));
    };
    return BlockFunctional(pts, {&W1, &W2}, rule, {target});
}

LinearMap recover_map(const BlockFunctional& phi, int cap) {
    if (phi.size() != 2) throw std::invalid_argument("recover_map needs a two-point block");
    LinearMap t;
    t.cap = cap;
    for (int a = 0; a <= cap; ++a)
        for (const auto& w1 : phi.module(0).basis(a)) {
            GradedVector img;
            for (int b = 0; b <= cap; ++b)
                for (const auto& w2 : phi.module(1).basis(b)) img.add(w2, phi({w1, w2}));
            t.images.emplace(w1, img);
        }
    return t;
}

Rational three_point_block(const Module& W, const GradedVector& v, const Rational& z0,
                           const GradedVector& w, const GradedVector& w_dual) {
    if (z0.is_zero()) throw std::domain_error("the insertion point must differ from 0");
    Rational total;
    for (const auto& [d, vd] : by_weight(v))
        for (const auto& [a, wa] : by_weight(w))
            for (const auto& [n, wn] : by_weight(w_dual)) {
                // only Y(v)_k with wt w + d - k - 1 = n pairs nontrivially
                int k = a + d - 1 - n;
                Rational c = pair(wn, W.mode(vd, k, wa));
                if (!c.is_zero()) total += c * pow(z0, -k - 1);
            }
    return total;
}

BlockFunctional three_point_functional(const Module& W, const Rational& z0) {
    std::shared_ptr<const Module> dual = contragredient(W);
    const Module& V = W.algebra().adjoint();
    SpherePoints pts({SpherePoint::finite(Rational(0)), SpherePoint::finite(z0), SpherePoint::infinity()});
    const Module* Wp = &W;
    auto rule = [Wp, z0](const std::vector<Label>& l) {
        return three_point_block(*Wp, GradedVector(l[1]), z0, GradedVector(l[0]), GradedVector(l[2]));
    };
    return BlockFunctional(pts, {&W, &V, dual.get()}, rule, {dual});
}

namespace {

RationalFunction propagated_homogeneous(const BlockFunctional& phi, const GradedVector& v, int d,
                                        const std::vector<GradedVector>& ws) {
    const SpherePoints& pts = phi.points();
    std::vector<std::size_t> fin = pts.finite_indices();
    std::size_t inf = *pts.infinity_index();
    for (const auto& w : ws)
        if (w.is_zero()) return RationalFunction();

    std::vector<std::pair<Rational, int>> poles;
    int D = ws[inf].max_weight() - d;
    for (std::size_t j : fin) {
        int N = d + ws[j].max_weight();
        poles.emplace_back(pts[j].x, N);
        D += N;
    }
    if (D < 0) return RationalFunction();

    // expansion at the first finite point: coefficient of t^e is phi(.. Y(v)_{-e-1} w_i0 ..)
    std::size_t i0 = fin.front();
    int N0 = poles.front().second;
    auto coeff_at = [&](std::size_t i, int e) {
        return phi(replaced(ws, i, phi.module(i).mode(v, -e - 1, ws[i])));
    };
    std::vector<Rational> p(static_cast<std::size_t>(D + 1));
    for (int e = -N0; e <= D - N0; ++e) p[static_cast<std::size_t>(e + N0)] = coeff_at(i0, e);
    for (std::size_t j = 1; j < fin.size(); ++j) {
        // (t + x_i0 - x_j)^{N_j}
        Poly f = poly_linear_power(pts[fin[j]].x - pts[i0].x, poles[j].second);
        std::vector<Rational> q(static_cast<std::size_t>(D + 1));
        for (std::size_t a = 0; a < p.size(); ++a)
            for (std::size_t b = 0; b < f.size() && a + b < q.size(); ++b) q[a + b] += p[a] * f[b];
        p = std::move(q);
    }
    RationalFunction R(poly_taylor_shift(p, -pts[i0].x), poles);

    constexpr int extra = 3;
    for (std::size_t k = 0; k < fin.size(); ++k) {
        std::size_t j = fin[k];
        int N = poles[k].second;
        int from = -N, to = j == i0 ? D - N + extra : -N + extra;
        if (j == i0) from = D - N + 1;
        TruncSeries e = R.expand(pts[j], to + 1);
        for (int x = from; x <= to; ++x)
            if (e.coeff(x) != coeff_at(j, x))
                throw std::logic_error("propagated block disagrees with its expansion at " + pts[j].str());
    }
    // near infinity: phi(.. Y(U(gamma_y) v, 1/y) w_inf ..) with
    // U(gamma_y) v = sum_m (-1)^d y^{m - 2d}/m! L1^m v
    const VertexAlgebra& V = phi.module(0).algebra();
    int G = ws[inf].max_weight() - d;
    TruncSeries e = R.expand(pts[inf], -G + extra + 1);
    for (int x = -G; x <= -G + extra; ++x) {
        Rational expect;
        GradedVector lm = v;
        Rational sign = d % 2 ? Rational(-1) : Rational(1);
        for (int m = 0; m <= d && !lm.is_zero(); ++m) {
            int k = 2 * d - m - 1 - x;
            GradedVector y = phi.module(inf).mode(lm, k, ws[inf]);
            if (!y.is_zero()) expect += phi(replaced(ws, inf, y)) * sign / factorial(m);
            lm = V.L(1, lm);
        }
        if (e.coeff(x) != expect)
            throw std::logic_error("propagated block disagrees with its expansion at infinity");
    }
    return R;
}

}  // namespace

RationalFunction propagated_function(const BlockFunctional& phi, const GradedVector& v,
                                     const std::vector<GradedVector>& ws) {
    if (!phi.points().has_infinity() || phi.points().finite_indices().empty())
        throw std::invalid_argument("propagation needs infinity and a finite point among the marked points");
    if (ws.size() != phi.size()) throw std::invalid_argument("one vector per marked point");
    RationalFunction total;
    for (const auto& [d, vd] : by_weight(v)) total = total + propagated_homogeneous(phi, vd, d, ws);
    return total;
}

BlockFunctional propagate(const BlockFunctional& phi, const Rational& y) {
    SpherePoint p = SpherePoint::finite(y);
    if (phi.points().contains(p)) throw std::invalid_argument("propagation point " + y.str() + " is already marked");
    std::vector<const Module*> mods;
    for (std::size_t i = 0; i < phi.size(); ++i) mods.push_back(&phi.module(i));
    mods.push_back(&phi.module(0).algebra().adjoint());
    auto rule = [phi, y](const std::vector<Label>& l) {
        std::vector<GradedVector> ws;
        for (std::size_t i = 0; i + 1 < l.size(); ++i) ws.emplace_back(l[i]);
        return propagated_function(phi, GradedVector(l.back()), ws)(y);
    };
    return BlockFunctional(phi.points().with(p), std::move(mods), rule);
}

Rational double_propagate(const BlockFunctional& phi, const GradedVector& u, const Rational& x,
                          const GradedVector& v, const Rational& y,
                          const std::vector<GradedVector>& ws) {
    std::vector<GradedVector> all = ws;
    all.push_back(v);
    all.push_back(u);
    return propagate(propagate(phi, y), x)(all);
}

}  // namespace voa
