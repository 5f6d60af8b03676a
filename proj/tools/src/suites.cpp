#include "voa_cli/suites.hpp"

#include "voa/blocks.hpp"
#include "voa/coord_change.hpp"
#include "voa/models.hpp"
#include "voa/ode.hpp"
#include "voa/schwarzian.hpp"
#include "voa/sewing.hpp"
#include "voa/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace voa::cli {

namespace {

constexpr std::size_t kMaxWitnesses = 5;

class Tally {
public:
    void check(bool ok, const std::function<std::string()>& witness) {
        ++instances_;
        if (ok) return;
        ++failures_;
        if (witnesses_.size() < kMaxWitnesses) witnesses_.push_back(witness());
    }
    // An exception inside an instance is a failed instance, not a crash.
    void guarded(const std::function<bool()>& body, const std::function<std::string()>& witness) {
        bool ok = false;
        std::string extra;
        try {
            ok = body();
        } catch (const std::exception& e) {
            extra = std::string(" threw: ") + e.what();
        }
        check(ok, [&] { return witness() + extra; });
    }
    SuiteResult finish(const std::string& name, int criterion, Json details = Json::object()) const {
        SuiteResult r;
        r.name = name;
        r.criterion = criterion;
        r.instances = instances_;
        r.failures = failures_;
        r.pass = failures_ == 0 && instances_ > 0;
        r.witnesses = witnesses_;
        r.details = std::move(details);
        return r;
    }

private:
    long instances_ = 0;
    long failures_ = 0;
    std::vector<std::string> witnesses_;
};

// Uniform draws by rejection on the raw engine output, so the stream is the
// same with every standard library.
class Gen {
public:
    Gen(std::uint64_t seed, int criterion) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(criterion)};
        eng_.seed(seq);
    }
    int uniform(int lo, int hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return lo + static_cast<int>(x % span);
    }
    Rational rational(int span = 4) { return Rational(uniform(-span, span), uniform(1, span)); }
    Rational nonzero(int span = 4) {
        Rational r;
        while (r.is_zero()) r = rational(span);
        return r;
    }
    // a1 z + ... + a_deg z^deg with a1 != 0, known to the given order
    TruncSeries coordinate(int deg, int order) {
        std::vector<Rational> p = {Rational(0), nonzero()};
        for (int i = 2; i <= deg; ++i) p.push_back(rational());
        return TruncSeries::polynomial("z", p, order);
    }
    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))];
    }

private:
    std::mt19937_64 eng_;
};

std::vector<Label> labels_up_to(const Module& m, int cap) {
    std::vector<Label> out;
    for (int n = 0; n <= cap; ++n)
        for (const auto& l : m.basis(n)) out.push_back(l);
    return out;
}

bool vanishes(const TruncSeries& s) {
    for (int e = s.floor(); e < s.order(); ++e)
        if (!s.coeff(e).is_zero()) return false;
    return true;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
    return out;
}

// Partitions of n with all parts >= lo, by dynamic programming over the allowed parts.
std::vector<Rational> partition_counts(int K, int lo) {
    std::vector<long> p(static_cast<std::size_t>(K + 1), 0);
    p[0] = 1;
    for (int part = lo; part <= K; ++part)
        for (int k = part; k <= K; ++k) p[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k - part)];
    return {p.begin(), p.end()};
}

SuiteResult virasoro_relation(std::uint64_t) {
    Tally t;
    auto heis = heisenberg_model();
    auto vir = virasoro_model(Rational(1, 2));
    for (const Module* mod : {&heis->adjoint(), &vir->adjoint()}) {
        CentralCharge c{mod->algebra().central_charge()};
        for (const Label& l : labels_up_to(*mod, 8)) {
            GradedVector w(l);
            for (int m = -5; m <= 5; ++m)
                for (int n = m + 1; n <= 5; ++n) {
                    GradedVector lhs = mod->L(m, mod->L(n, w)) - mod->L(n, mod->L(m, w));
                    auto [k, z] = vir_bracket(m, n, c);
                    GradedVector rhs = mod->L(m + n, w).scaled(k) + w.scaled(z);
                    t.check(lhs == rhs, [&] {
                        return mod->name() + " [L" + std::to_string(m) + ",L" + std::to_string(n) + "] on " + l.str();
                    });
                }
        }
    }
    return t.finish("virasoro-relation", 1);
}

GradedVector random_combination(Gen& g, const std::vector<Label>& pool) {
    GradedVector v(g.pick(pool), g.nonzero());
    v += GradedVector(g.pick(pool), g.rational());
    return v;
}

SuiteResult vertex_axioms(std::uint64_t seed) {
    Tally t;
    Gen g(seed, 2);
    auto heis = heisenberg_model();
    auto vir = virasoro_model(Rational(1, 2));
    long jacobi = 0, nonzero = 0;
    for (const VertexAlgebra* alg : {static_cast<const VertexAlgebra*>(heis.get()),
                                     static_cast<const VertexAlgebra*>(vir.get())}) {
        const Module& V = alg->adjoint();
        GradedVector vac = alg->vacuum();
        for (const Label& l : labels_up_to(V, 6)) {
            GradedVector v(l);
            t.check(V.mode(v, -1, vac) == v, [&] { return alg->name() + " creation " + l.str(); });
            for (int n = 0; n <= 3; ++n)
                t.check(V.mode(v, n, vac).is_zero(),
                        [&] { return alg->name() + " creation " + l.str() + " mode " + std::to_string(n); });
            for (int n = -4; n <= 4; ++n)
                t.check(V.mode(vac, n, v) == (n == -1 ? v : GradedVector()),
                        [&] { return alg->name() + " vacuum mode " + std::to_string(n) + " on " + l.str(); });
        }
        for (const Label& l : labels_up_to(V, 5)) {
            GradedVector v(l), dv = V.L(-1, v);
            for (const Label& l2 : labels_up_to(V, 5 - l.weight()))
                for (int n = -3; n <= 3; ++n)
                    t.check(V.mode(dv, n, GradedVector(l2)) == V.mode(v, n - 1, GradedVector(l2)).scaled(Rational(-n)),
                            [&] { return alg->name() + " L-1 derivative " + l.str() + " mode " + std::to_string(n) + " on " + l2.str(); });
        }
        std::vector<Label> pool = labels_up_to(V, 3);
        for (int i = 0; i < 50;) {
            GradedVector u = random_combination(g, pool), v = random_combination(g, pool),
                         w = random_combination(g, pool);
            if (u.max_weight() + v.max_weight() + w.max_weight() > 6) continue;
            int m = g.uniform(-2, 2), n = g.uniform(-2, 2), h = g.uniform(-2, 2);
            t.guarded(
                [&] {
                    JacobiResult j = jacobi_check(V, u, v, w, m, n, h);
                    if (!j.lhs.is_zero()) ++nonzero;
                    return j.pass;
                },
                [&] {
                    return alg->name() + " Jacobi u=" + u.str() + " v=" + v.str() + " w=" + w.str() + " (m,n,h)=(" +
                           std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(h) + ")";
                });
            ++i;
            ++jacobi;
        }
    }
    return t.finish("vertex-axioms", 2, Json{{"jacobi_instances", jacobi}, {"jacobi_nonzero", nonzero}});
}

SuiteResult group_law(std::uint64_t seed) {
    Tally t;
    Gen g(seed, 3);
    auto heis = heisenberg_model();
    auto vir = virasoro_model(Rational(1, 2));
    std::vector<const Module*> mods = {&heis->adjoint(), &vir->adjoint()};
    std::vector<std::vector<Label>> bases = {labels_up_to(*mods[0], 6), labels_up_to(*mods[1], 6)};
    for (int i = 0; i < 100; ++i) {
        TruncSeries r1 = g.coordinate(g.uniform(1, 4), 8), r2 = g.coordinate(g.uniform(1, 4), 8);
        CoordChange a(r1), b(r2), ab(series_compose(r1, r2));
        for (std::size_t k = 0; k < mods.size(); ++k) {
            bool ok = true;
            std::string where;
            for (const Label& l : bases[k]) {
                GradedVector w(l);
                if (U_apply(ab, w, *mods[k]) != U_apply(a, U_apply(b, w, *mods[k]), *mods[k])) {
                    ok = false;
                    where = l.str();
                    break;
                }
            }
            t.check(ok, [&] { return mods[k]->name() + " rho1=" + r1.str() + " rho2=" + r2.str() + " at " + where; });
        }
    }
    return t.finish("group-law", 3);
}

SuiteResult extract_closed_forms(std::uint64_t seed) {
    Tally t;
    Gen g(seed, 4);
    for (int i = 0; i < 25; ++i) {
        Rational a1 = g.nonzero(), a2 = g.rational(), a3 = g.rational();
        auto c = extract_coeffs(TruncSeries::polynomial("z", {Rational(0), a1, a2, a3}, 4));
        std::vector<Rational> expect = {a1, a2 / a1, a3 / a1 - (a2 / a1) * (a2 / a1)};
        t.check(c == expect, [&] { return "a=(" + a1.str() + "," + a2.str() + "," + a3.str() + ")"; });
    }
    return t.finish("extract-closed-forms", 4);
}

SuiteResult huang_conjugation(std::uint64_t seed) {
    Tally t;
    Gen g(seed, 5);
    auto heis = heisenberg_model();
    std::vector<Rational> mus = {Rational(0), Rational(1, 2), Rational(-1, 3)};
    std::vector<std::unique_ptr<FockModule>> fock;
    for (const auto& mu : mus) fock.push_back(std::make_unique<FockModule>(*heis, mu));
    const int z_order = 5;
    for (int i = 0; i < 20; ++i) {
        const FockModule& F = *fock[static_cast<std::size_t>(i) % fock.size()];
        std::vector<Label> vs = labels_up_to(heis->adjoint(), 3);
        Label lv;
        while (lv.weight() == 0) lv = g.pick(vs);
        Label lw = g.pick(labels_up_to(F, 5 - lv.weight()));
        int need = z_order + 2 * lv.weight() + lw.weight() + 1;
        TruncSeries alpha = g.coordinate(g.uniform(1, 4), need);
        t.guarded([&] { return huang_conjugation_check(alpha, GradedVector(lv), GradedVector(lw), F, z_order).pass; },
                  [&] { return F.name() + " alpha=" + alpha.str() + " v=" + lv.str() + " w=" + lw.str(); });
    }
    // alpha = lambda z: lambda^{L~0} Y(v,z) lambda^{-L~0} = Y(lambda^{L0} v, lambda z)
    const FockModule& F = *fock[1];
    Rational lambda = g.nonzero();
    GradedVector v = GradedVector(Label({2, 1})) + GradedVector(Label({1}), g.rational());
    GradedVector w(Label({2}));
    t.guarded(
        [&] {
            auto r = huang_conjugation_check(TruncSeries::polynomial("z", {Rational(0), lambda}, 30), v, w, F, z_order);
            if (!r.pass) return false;
            for (int e = r.rhs.floor; e < r.rhs.order; ++e) {
                GradedVector direct;
                for (const auto& [l, a] : v.terms())
                    direct += F.mode(GradedVector(l), -e - 1, w).scaled(a * pow(lambda, l.weight()) * pow(lambda, e));
                if (r.rhs.coeff(e) != direct) return false;
            }
            return true;
        },
        [&] { return "scaling lambda=" + lambda.str(); });
    return t.finish("huang-conjugation", 5);
}

SuiteResult schwarzian_suite(std::uint64_t seed) {
    Tally t;
    Gen g(seed, 6);
    int mobius = 0;
    while (mobius < 50) {
        Rational a = g.rational(), b = g.rational(), c = g.rational(), d = g.nonzero();
        if ((a * d - b * c).is_zero()) continue;
        t.check(vanishes(schwarzian(mobius_series(a, b, c, d, 10))),
                [&] { return "Mobius (" + a.str() + "," + b.str() + "," + c.str() + "," + d.str() + ")"; });
        ++mobius;
    }
    for (int i = 0; i < 50; ++i) {
        TruncSeries f = g.coordinate(4, 9), h = g.coordinate(4, 9);
        auto r = cocycle_check(f, h);
        t.check(r.chain_rule, [&] { return "chain rule f=" + f.str() + " g=" + h.str(); });
        t.check(r.antisymmetry, [&] { return "antisymmetry g=" + h.str(); });
    }
    for (int i = 0; i < 50; ++i) {
        TruncSeries a = g.coordinate(4, 9), b = g.coordinate(4, 9), c = g.coordinate(4, 9);
        TruncSeries s = triple_cocycle(a, b, c);
        t.check(s.order() >= 3 && vanishes(s), [&] { return "triple " + a.str() + " " + b.str() + " " + c.str(); });
    }
    for (int i = 0; i < 20; ++i) {
        std::vector<Rational> q;
        for (int k = 0; k <= g.uniform(0, 4); ++k) q.push_back(g.rational());
        TruncSeries Q = TruncSeries::polynomial("z", q, 9);
        t.guarded(
            [&] {
                TruncSeries s = schwarzian(uniformize(Q));
                return s.order() >= 8 && agree_to(s, Q, 8);
            },
            [&] { return "uniformize Q=" + Q.str(); });
    }
    for (int i = 0; i < 10; ++i) {
        Rational a = g.nonzero();
        t.check(schwarzian(exp_minus_one(a, 12)) == TruncSeries::constant("z", -a * a / Rational(2), 9),
                [&] { return "S(e^{az}-1) a=" + a.str(); });
    }
    t.check(exponential_schwarzian_pi_squared(Rational(2)) == Rational(2), [] { return "S(e^{2 pi i z}) != 2 pi^2"; });
    return t.finish("schwarzian", 6);
}

SuiteResult residue_machinery(std::uint64_t seed) {
    Tally t;
    Gen g(seed, 7);
    const SpherePoint inf = SpherePoint::infinity();
    int glued = 0, rejected = 0;
    for (int i = 0; i < 30; ++i) {
        Rational z0 = g.nonzero(3);
        int n0 = g.uniform(0, 2), nz = g.uniform(0, 2);
        Poly num;
        for (int k = 0; k <= n0 + nz + g.uniform(0, 2); ++k) num.push_back(g.rational(3));
        RationalFunction f(num, {{Rational(0), n0}, {z0, nz}});
        SpherePoints pts({SpherePoint::finite(Rational(0)), SpherePoint::finite(z0), inf});
        std::vector<TruncSeries> tails = {f.expand(pts[0], 3), f.expand(pts[1], 3), f.expand(pts[2], 2)};
        bool perturbed = i % 2 == 1;
        if (perturbed) {
            // residue of f d zeta at a finite point, or the t^1 coefficient at infinity
            std::size_t which = static_cast<std::size_t>(g.uniform(0, 2));
            int e = which == 2 ? 1 : -1;
            tails[which] = tails[which] + TruncSeries::monomial("t", e, g.nonzero(), tails[which].order());
        }
        GlueResult a = rational_glue(z0, tails[0], tails[1], tails[2]);
        GlueResult b = strong_residue_check(pts, LaurentTail{tails});
        bool ok = a.pass == b.pass && a.pass == !perturbed;
        if (ok && a.pass) ok = a.section && b.section && *a.section == *b.section && *a.section == f;
        if (ok && !a.pass) ok = a.violation.has_value() && b.violation.has_value();
        t.check(ok, [&] {
            return "glue z0=" + z0.str() + " f=" + f.str() + (perturbed ? " perturbed" : "") +
                   " glue=" + std::to_string(a.pass) + " residue=" + std::to_string(b.pass);
        });
        (a.pass ? glued : rejected) += 1;
    }
    Rational x(g.uniform(1, 4));
    SpherePoints pts({SpherePoint::finite(Rational(0)), SpherePoint::finite(x), inf});
    for (int i = 0; i < 20; ++i) {
        // a global form plus pieces that are holomorphic against t on each disc
        Poly num;
        for (int k = 0; k < 4; ++k) num.push_back(g.rational(3));
        RationalFunction alpha(num, {{Rational(0), g.uniform(0, 2)}, {x, g.uniform(0, 2)}});
        RationalFunction tf({g.rational(3), g.rational(3)}, {{Rational(0), g.uniform(0, 1)}});
        std::vector<TruncSeries> sigma;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            int vanish = std::max(tf.pole_order(pts[j]), 0);
            sigma.push_back(alpha.expand_form(pts[j], 8) + TruncSeries::monomial("t", vanish, g.rational(3), 8));
        }
        Rational p = residue_pairing(pts, sigma, tf);
        t.check(p.is_zero(), [&] { return "coboundary alpha=" + alpha.str() + " t=" + tf.str() + " pairs to " + p.str(); });
    }
    return t.finish("residue-machinery", 7, Json{{"glued", glued}, {"rejected", rejected}});
}

struct PropagationFixture {
    std::string name;
    BlockFunctional phi;
};

// Label tuples with each slot up to weight 2 and total weight at most 3.
std::vector<std::vector<Label>> small_tuples(const BlockFunctional& phi) {
    std::vector<std::vector<Label>> out = {{}};
    for (std::size_t i = 0; i < phi.size(); ++i) {
        std::vector<std::vector<Label>> next;
        for (const auto& partial : out)
            for (const Label& l : labels_up_to(phi.module(i), 2)) {
                int total = l.weight();
                for (const Label& p : partial) total += p.weight();
                if (total > 3) continue;
                auto grown = partial;
                grown.push_back(l);
                next.push_back(std::move(grown));
            }
        out = std::move(next);
    }
    return out;
}

SuiteResult propagation(std::uint64_t seed) {
    Tally t;
    Gen g(seed, 8);
    auto heis = heisenberg_model();
    auto vir = virasoro_model(Rational(1, 2));
    FockModule F(*heis, Rational(1, 2)), G(*heis, Rational(2, 5));
    VirasoroModule M(*vir, Rational(1, 16), false);
    auto Gd = contragredient(G);
    auto Md = contragredient(M);
    std::vector<PropagationFixture> fixtures = {
        {"three-point F_1/2 at 1", three_point_functional(F, Rational(1))},
        {"three-point V_heis at 2", three_point_functional(heis->adjoint(), Rational(2))},
        {"three-point V_vir at -1", three_point_functional(vir->adjoint(), Rational(-1))},
        {"hom F_2/5", hom_block(G, *Gd, LinearMap::identity(G, 4), 2)},
        {"hom L(1/2,1/16)", hom_block(M, *Md, LinearMap::identity(M, 4), 2)},
    };
    GradedVector vac(Label{});
    for (const auto& fx : fixtures) {
        Rational y;
        while (y.is_zero() || fx.phi.points().contains(SpherePoint::finite(y))) y = g.nonzero();
        BlockFunctional prop = propagate(fx.phi, y);
        for (const auto& labels : small_tuples(fx.phi)) {
            std::vector<GradedVector> ws(labels.begin(), labels.end());
            Rational value = fx.phi(ws);
            auto with_vac = ws;
            with_vac.push_back(vac);
            t.guarded([&] { return propagated_function(fx.phi, vac, ws) == RationalFunction::constant(value) &&
                                   prop(with_vac) == value; },
                      [&] {
                          std::vector<std::string> s;
                          for (const auto& l : labels) s.push_back(l.str());
                          return fx.name + " vacuum propagation at " + join(s);
                      });
        }
    }
    const BlockFunctional& phi = fixtures[0].phi;
    std::vector<GradedVector> insertions = {GradedVector(Label({1})), GradedVector(Label({2})),
                                            GradedVector(Label({1, 1}))};
    std::vector<GradedVector> ws = {GradedVector(Label({1})), vac, GradedVector(Label({1}))};
    for (int i = 0; i < 10;) {
        Rational x = g.nonzero(), y = g.nonzero();
        if (x == y || x == Rational(1) || y == Rational(1)) continue;
        GradedVector u = g.pick(insertions), v = g.pick(insertions);
        t.guarded([&] { return double_propagate(phi, u, x, v, y, ws) == double_propagate(phi, v, y, u, x, ws); },
                  [&] { return "double propagation u=" + u.str() + "@" + x.str() + " v=" + v.str() + "@" + y.str(); });
        ++i;
    }
    return t.finish("propagation", 8);
}

SuiteResult characters(std::uint64_t) {
    Tally t;
    auto heis = heisenberg_model();
    auto vir = virasoro_model(Rational(1, 2));
    GradedVector vac(Label{});
    SewnSeries h = torus_character(heis->adjoint(), vac, 20);
    t.check(h.normalized.coeffs() == partition_counts(20, 1), [] { return "Heisenberg character is not p(n)"; });
    SewnSeries v = torus_character(vir->adjoint(), vac, 12);
    t.check(v.normalized.coeffs() == partition_counts(12, 2), [] { return "Virasoro character is not parts >= 2"; });
    SewnSeries hn = normalize_character(h, Rational(1));
    t.check(hn.standard.offset() == Rational(-1, 24) && hn.standard.coeffs() == h.standard.coeffs(),
            [&] { return "Heisenberg normalized offset " + hn.standard.offset().str(); });
    SewnSeries vn = normalize_character(v, Rational(1, 2));
    t.check(vn.standard.offset() == Rational(-1, 48), [&] { return "Virasoro normalized offset " + vn.standard.offset().str(); });
    FockModule F(*heis, Rational(1, 2));
    SewnSeries f = torus_character(F, vac, 8);
    SewnSeries fn = normalize_character(f, Rational(1));
    t.check(f.standard.offset() == Rational(1, 8) && fn.standard.offset() == Rational(1, 8) - Rational(1, 24),
            [&] { return "Fock offsets " + f.standard.offset().str() + " " + fn.standard.offset().str(); });
    SewnSeries sewn = sew(torus_block(heis->adjoint()), {vac}, 6);
    t.check(sewn.normalized.coeffs() == partition_counts(6, 1), [] { return "sewn three-point block differs from p(n)"; });
    return t.finish("characters", 9,
                    Json{{"heisenberg", exact_qseries(hn.standard)}, {"virasoro", exact_qseries(vn.standard)}});
}

SuiteResult two_sided_identity(std::uint64_t) {
    Tally t;
    auto heis = heisenberg_model();
    FockModule F(*heis, Rational(1, 2));
    std::vector<std::pair<std::string, GradedVector>> us = {
        {"1", GradedVector(Label{})}, {"c", heis->conformal_vector()}, {"a_-1", GradedVector(Label({1}))}};
    std::vector<std::pair<std::string, BivarSeries>> fs = {
        {"1", BivarSeries::polynomial("xi", "w", {{Rational(1)}})},
        {"xi", BivarSeries::polynomial("xi", "w", {{Rational(0)}, {Rational(1)}})},
        {"w", BivarSeries::polynomial("xi", "w", {{Rational(0), Rational(1)}})},
        {"xi w", BivarSeries::polynomial("xi", "w", {{Rational(0), Rational(0)}, {Rational(0), Rational(1)}})}};
    int nonzero = 0;
    for (const auto& [un, u] : us)
        for (const auto& [fn, f] : fs) {
            auto r = two_sided_identity_check(u, f, F, 5);
            if (!r.lhs.empty()) ++nonzero;
            t.check(r.pass, [&] { return "u=" + un + " f=" + fn; });
        }
    return t.finish("two-sided-identity", 10, Json{{"nonzero_instances", nonzero}});
}

SuiteResult sewn_ode(std::uint64_t) {
    Tally t;
    auto heis = heisenberg_model();
    const int K = 10;
    for (const Rational& mu : {Rational(0), Rational(1, 2), Rational(1)}) {
        FockModule F(*heis, mu);
        QExpansion chi = torus_character(F, GradedVector(Label{}), K).standard;
        auto w = sewn_ode_witness({chi}, K);
        // q d/dq log(q^{mu^2/2} / prod (1 - q^n)) = mu^2/2 + sum_m sigma(m) q^m
        std::vector<Rational> oracle = {mu * mu / Rational(2)};
        for (int m = 1; m <= K; ++m) {
            long sigma = 0;
            for (int d = 1; d <= m; ++d)
                if (m % d == 0) sigma += d;
            oracle.emplace_back(sigma);
        }
        bool ok = w.exists && w.unique && static_cast<int>(w.A.size()) == K + 1;
        for (int p = 0; ok && p <= K; ++p) ok = w.A[static_cast<std::size_t>(p)][0][0] == oracle[static_cast<std::size_t>(p)];
        t.check(ok, [&] { return "F_" + mu.str() + ": " + (w.exists ? "A differs from the divisor-sum oracle" : w.reason); });
    }
    return t.finish("sewn-ode", 11);
}

SuiteResult pole_ode(std::uint64_t) {
    Tally t;
    const int K = 40;
    std::vector<Rational> c(K + 1, Rational(1));
    c[0] = Rational(0);
    PoleODE ode({{TruncSeries("q", 0, K + 1, c)}});
    FormalSolution s = formal_solve(ode, {{0, {Rational(1)}}}, K);
    for (int n = 0; n <= K; ++n) {
        t.check(recursion_residual(ode, s, n) == RVector{Rational(0)}, [&] { return "residual at n=" + std::to_string(n); });
        t.check(s.modes[static_cast<std::size_t>(n)] == RVector{Rational(1)},
                [&] { return "mode " + std::to_string(n) + " differs from 1/(1-q)"; });
    }
    RadiusEstimate est = radius_estimate(ode, Rational(1, 2), Rational(1));
    GrowthReport gr = growth_check(est, s);
    t.check(gr.pass, [&] { return "growth bound broken at n=" + std::to_string(gr.violation.value_or(-1)); });
    std::complex<double> qa(0.1, 0.0), qb(0.25, 0.1);
    NumericResult r = numeric_continue(ode, {1.0 / (1.0 - qa)}, {{qa, qb}, 2000});
    std::complex<double> exact = 1.0 / (1.0 - qb);
    double rel = std::abs(r.value[0] - exact) / std::abs(exact);
    t.check(rel < 1e-8, [&] {
        std::ostringstream os;
        os << "numeric continuation relative error " << rel;
        return os.str();
    });
    return t.finish("pole-ode", 12, Json{{"r0", exact_scalar(est.r0)}, {"gamma", exact_scalar(est.gamma)}});
}

using SuiteFn = SuiteResult (*)(std::uint64_t);

const std::vector<std::pair<SuiteInfo, SuiteFn>>& registry() {
    static const std::vector<std::pair<SuiteInfo, SuiteFn>> r = {
        {{1, "virasoro-relation", "Virasoro relation on both models at cap 8", 30}, virasoro_relation},
        {{2, "vertex-axioms", "creation, vacuum, L-1 derivative and Jacobi at cap 6", 120}, vertex_axioms},
        {{3, "group-law", "U(rho1 o rho2) = U(rho1) U(rho2) at cap 6", 120}, group_law},
        {{4, "extract-closed-forms", "extract_coeffs closed forms for a cubic", 0}, extract_closed_forms},
        {{5, "huang-conjugation", "Huang conjugation on Heisenberg modules at cap 5", 0}, huang_conjugation},
        {{6, "schwarzian", "Schwarzian cocycle, Mobius, uniformization and exponential", 60}, schwarzian_suite},
        {{7, "residue-machinery", "gluing iff strong residue; coboundaries pair to zero", 0}, residue_machinery},
        {{8, "propagation", "vacuum propagation and double-propagation symmetry", 0}, propagation},
        {{9, "characters", "graded characters against partition counts", 30}, characters},
        {{10, "two-sided-identity", "two-sided residue identity for sewing", 0}, two_sided_identity},
        {{11, "sewn-ode", "sewn ODE witness against the divisor-sum oracle", 0}, sewn_ode},
        {{12, "pole-ode", "simple-pole ODE recursion, growth and continuation", 60}, pole_ode},
    };
    return r;
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
    static const std::vector<SuiteInfo> infos = [] {
        std::vector<SuiteInfo> out;
        for (const auto& [info, fn] : registry()) out.push_back(info);
        return out;
    }();
    return infos;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
    for (const auto& [info, fn] : registry())
        if (info.name == name) return fn(seed);
    throw std::invalid_argument("unknown suite " + name);
}

Json to_json(const SuiteResult& r) {
    Json j{{"name", r.name},          {"criterion", r.criterion}, {"pass", r.pass},
           {"instances", r.instances}, {"failures", r.failures},   {"witnesses", r.witnesses}};
    if (!r.details.empty()) j["details"] = r.details;
    return j;
}

}  // namespace voa::cli
