#include "voa/sewing.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace voa {

namespace {

void check_order(int K) {
    if (K < 0) throw std::invalid_argument("q-order must be nonnegative");
}

// L~0 eigenvalue of a basis vector, read off the module's own L0 action.
int reduced_weight(const Module& m, const Label& l) {
    GradedVector v = m.L(0, GradedVector(l));
    Rational e = v.coeff(l);
    if (v.terms().size() != (e.is_zero() ? 0u : 1u))
        throw std::logic_error("L0 is not diagonal on " + l.str() + " in " + m.name());
    Rational r = e - m.delta();
    if (!r.is_integer()) throw std::logic_error("non-integral L~0 eigenvalue on " + l.str());
    return static_cast<int>(r.to_long());
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& taken) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(taken.begin(), taken.end(), i) == taken.end()) out.push_back(i);
    return out;
}

}  // namespace

SewableBlock::SewableBlock(BlockFunctional p, std::size_t s, std::size_t d) : psi(std::move(p)), sewn(s), dual(d) {
    if (sewn >= psi.size() || dual >= psi.size() || sewn == dual)
        throw std::invalid_argument("sewn slots must be two distinct slots of the block");
    const Module& M = psi.module(sewn);
    const Module& Md = psi.module(dual);
    if (Md.is_dual() == M.is_dual() || Md.delta() != M.delta() || &Md.algebra() != &M.algebra())
        throw std::invalid_argument(Md.name() + " is not a contragredient of " + M.name());
}

std::vector<std::size_t> SewableBlock::open_slots() const { return complement(psi.size(), {sewn, dual}); }

SewnSeries sew(const SewableBlock& s, const std::vector<GradedVector>& ws, int K, InsertionSide side) {
    check_order(K);
    std::vector<std::size_t> open = s.open_slots();
    if (ws.size() != open.size()) throw std::invalid_argument("one vector per open slot");
    const Module& M = s.module();
    const Module& weigher = side == InsertionSide::Left ? M : s.psi.module(s.dual);
    std::vector<GradedVector> all(s.psi.size());
    for (std::size_t i = 0; i < open.size(); ++i) all[open[i]] = ws[i];
    std::vector<Rational> c(static_cast<std::size_t>(K + 1));
    for (int n = 0; n <= K; ++n)
        for (const Label& l : M.basis(n)) {
            int e = reduced_weight(weigher, l);
            if (e < 0 || e > K) continue;
            all[s.sewn] = GradedVector(l);
            all[s.dual] = GradedVector(l);
            c[static_cast<std::size_t>(e)] += s.psi(all);
        }
    QExpansion norm(Rational(0), std::move(c));
    return {norm, norm.shifted(M.delta())};
}

SewableBlock torus_block(const Module& M) { return SewableBlock(three_point_functional(M, Rational(1)), 0, 2); }

SewnSeries torus_character(const Module& M, const GradedVector& v, int K) {
    check_order(K);
    std::vector<Rational> c(static_cast<std::size_t>(K + 1));
    if (!v.is_zero()) {
        if (!v.is_homogeneous()) throw std::invalid_argument("insertion must be homogeneous: " + v.str());
        int d = v.max_weight();
        for (int n = 0; n <= K; ++n)
            for (const Label& l : M.basis(n)) c[static_cast<std::size_t>(n)] += M.mode(v, d - 1, GradedVector(l)).coeff(l);
    }
    QExpansion norm(Rational(0), std::move(c));
    return {norm, norm.shifted(M.delta())};
}

SewnSeries normalize_character(const SewnSeries& s, const Rational& c) {
    Rational shift = -c / Rational(24);
    return {s.normalized.shifted(shift), s.standard.shifted(shift)};
}

Rational MultiQSeries::coeff(const std::vector<int>& n) const {
    if (n.size() != offsets.size()) throw std::invalid_argument("one exponent per q-symbol");
    for (int k : n)
        if (k < 0 || k >= order) throw std::out_of_range("multi q-series coefficient out of range");
    auto it = coeffs.find(n);
    return it == coeffs.end() ? Rational(0) : it->second;
}

namespace {

void check_pairs(const BlockFunctional& psi, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<std::size_t> seen;
    for (const auto& [a, b] : pairs) {
        SewableBlock(psi, a, b);
        for (std::size_t x : {a, b}) {
            if (std::find(seen.begin(), seen.end(), x) != seen.end())
                throw std::invalid_argument("a slot is sewn twice");
            seen.push_back(x);
        }
    }
}

std::vector<std::size_t> pair_slots(const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    std::vector<std::size_t> out;
    for (const auto& [a, b] : pairs) {
        out.push_back(a);
        out.push_back(b);
    }
    return out;
}

// Calls f on every exponent vector in [0, K]^size.
void for_each_exponent(std::size_t size, int K, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> n(size, 0);
    while (true) {
        f(n);
        std::size_t i = 0;
        while (i < size && n[i] == K) n[i++] = 0;
        if (i == size) return;
        ++n[i];
    }
}

}  // namespace

MultiQSeries sew_pairs(const BlockFunctional& psi, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                       const std::vector<GradedVector>& ws, int K) {
    check_order(K);
    check_pairs(psi, pairs);
    std::vector<std::size_t> open = complement(psi.size(), pair_slots(pairs));
    if (ws.size() != open.size()) throw std::invalid_argument("one vector per open slot");
    MultiQSeries out;
    out.order = K + 1;
    for (const auto& [a, b] : pairs) out.offsets.push_back(psi.module(a).delta());
    std::vector<GradedVector> all(psi.size());
    for (std::size_t i = 0; i < open.size(); ++i) all[open[i]] = ws[i];
    for_each_exponent(pairs.size(), K, [&](const std::vector<int>& n) {
        Rational total;
        std::function<void(std::size_t)> walk = [&](std::size_t j) {
            if (j == pairs.size()) {
                total += psi(all);
                return;
            }
            for (const Label& l : psi.module(pairs[j].first).basis(n[j])) {
                all[pairs[j].first] = GradedVector(l);
                all[pairs[j].second] = GradedVector(l);
                walk(j + 1);
            }
        };
        walk(0);
        if (!total.is_zero()) out.coeffs[n] = total;
    });
    return out;
}

BlockFunctional sew_level(const BlockFunctional& psi, std::size_t sewn, std::size_t dual, int n) {
    SewableBlock s(psi, sewn, dual);
    std::vector<std::size_t> open = s.open_slots();
    std::vector<SpherePoint> pts;
    std::vector<const Module*> mods;
    for (std::size_t i : open) {
        pts.push_back(psi.points()[i]);
        mods.push_back(&psi.module(i));
    }
    std::vector<Label> basis = psi.module(sewn).basis(n);
    auto rule = [psi, sewn, dual, open, basis](const std::vector<Label>& labels) {
        std::vector<Label> all(psi.size());
        for (std::size_t i = 0; i < open.size(); ++i) all[open[i]] = labels[i];
        Rational total;
        for (const Label& l : basis) {
            all[sewn] = l;
            all[dual] = l;
            total += psi(all);
        }
        return total;
    };
    return BlockFunctional(SpherePoints(pts), mods, rule);
}

MultiQSeries sew_pairs_iterated(const BlockFunctional& psi,
                                const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                const std::vector<GradedVector>& ws, int K) {
    check_order(K);
    check_pairs(psi, pairs);
    MultiQSeries out;
    out.order = K + 1;
    for (const auto& [a, b] : pairs) out.offsets.push_back(psi.module(a).delta());
    if (pairs.empty()) {
        Rational v = psi(ws);
        if (!v.is_zero()) out.coeffs[{}] = v;
        return out;
    }
    auto [a, b] = pairs.front();
    std::vector<std::pair<std::size_t, std::size_t>> rest;
    auto shift = [&](std::size_t i) { return i - (i > a ? 1 : 0) - (i > b ? 1 : 0); };
    for (std::size_t j = 1; j < pairs.size(); ++j) rest.emplace_back(shift(pairs[j].first), shift(pairs[j].second));
    for (int n = 0; n <= K; ++n) {
        MultiQSeries inner = sew_pairs_iterated(sew_level(psi, a, b, n), rest, ws, K);
        for (const auto& [m, v] : inner.coeffs) {
            std::vector<int> key{n};
            key.insert(key.end(), m.begin(), m.end());
            out.coeffs[key] = v;
        }
    }
    return out;
}

TwoSidedResult two_sided_identity_check(const GradedVector& u, const BivarSeries& f, const Module& M, int K) {
    check_order(K);
    if (f.floor_a() < 0 || f.floor_b() < 0)
        throw std::invalid_argument("f must be a polynomial in both variables");
    TwoSidedResult r;
    if (u.is_zero()) {
        r.pass = true;
        return r;
    }
    int d = homogeneous_weight(u);
    const Module& V = M.algebra().adjoint();
    auto Md = contragredient(M);

    // U(gamma_1) u = sum_m (-1)^d / m! L1^m u, by weight d - m
    std::vector<GradedVector> gamma_u;
    GradedVector x = u;
    for (int m = 0; !x.is_zero(); ++m) {
        gamma_u.push_back(x.scaled(Rational(d % 2 ? -1 : 1) / factorial(m)));
        x = V.L(1, x);
    }

    for (int i = f.floor_a(); i < f.order_a(); ++i)
        for (int j = f.floor_b(); j < f.order_b(); ++j) {
            Rational fij = f.coeff(i, j);
            if (fij.is_zero()) continue;
            for (int n = 0; n + j <= K; ++n)
                for (const Label& l : M.basis(n)) {
                    GradedVector out = M.mode(u, d - 1 + i - j, GradedVector(l));
                    for (const auto& [l2, c] : out.terms()) r.lhs[n + j][{l2, l}] += fij * c;
                }
            for (int n = 0; n + i <= K; ++n)
                for (int m = 0; m < static_cast<int>(gamma_u.size()); ++m)
                    for (const Label& l : M.basis(n)) {
                        GradedVector out = Md->mode(gamma_u[static_cast<std::size_t>(m)], d - m - 1 + j - i, GradedVector(l));
                        for (const auto& [l2, c] : out.terms()) r.rhs[n + i][{l, l2}] += fij * c;
                    }
        }
    for (auto* side : {&r.lhs, &r.rhs}) {
        for (auto it = side->begin(); it != side->end();) {
            std::erase_if(it->second, [](const auto& kv) { return kv.second.is_zero(); });
            it = it->second.empty() ? side->erase(it) : std::next(it);
        }
    }
    r.pass = r.lhs == r.rhs;
    return r;
}

RationalFunction periodized_coefficient(int a, int b, int p) {
    if (!(0 < a && a < b)) throw std::invalid_argument("periodization needs 0 < a < b");
    if (p < 0) throw std::invalid_argument("q-power must be nonnegative");
    RationalFunction out;
    if (p == 0) {
        Poly num(static_cast<std::size_t>(a + 1));
        num.back() = Rational(1);
        out = RationalFunction(num, {{Rational(1), b}});
    }
    Rational sign(b % 2 ? -1 : 1);
    // n >= 1: (-1)^b sum_k C(b+k-1, k) q^{n(a+k)} zeta^{a+k}
    // n <= -1, m = -n: sum_k C(b+k-1, k) q^{m(b-a+k)} zeta^{a-b-k}
    for (int n = 1; n <= p; ++n) {
        if (p % n) continue;
        int s = p / n;
        if (s >= a) {
            int k = s - a;
            Poly num(static_cast<std::size_t>(s + 1));
            num.back() = sign * binomial(b + k - 1, k);
            out = out + RationalFunction(num, {});
        }
        if (s >= b - a) {
            int k = s - (b - a);
            out = out + RationalFunction({binomial(b + k - 1, k)}, {{Rational(0), b - a + k}});
        }
    }
    return out;
}

SewnBlockResult sewn_block_check(const Module& M, const GradedVector& u, const GradedVector& w, int a, int b,
                                 int K) {
    check_order(K);
    SewnBlockResult r;
    r.residual.assign(static_cast<std::size_t>(K + 1), Rational(0));
    if (u.is_zero() || w.is_zero()) {
        r.pass = true;
        return r;
    }
    int d = homogeneous_weight(u);
    const Module& V = M.algebra().adjoint();
    BlockFunctional psi = three_point_functional(M, Rational(1));
    RationalFunction twist = RationalFunction::product_of_powers({Rational(0)}, {d - 1});
    // Y(u)_e w vanishes once e >= wt u + wt w
    int top = d + w.max_weight();
    for (int p = 0; p <= K; ++p) {
        RationalFunction g = twist * periodized_coefficient(a, b, p);
        TruncSeries e = g.expand(SpherePoint::finite(Rational(1)), top);
        GradedVector acted;
        for (int k = e.floor(); k < top; ++k) {
            Rational c = e.coeff(k);
            if (!c.is_zero()) acted += V.mode(u, k, w).scaled(c);
        }
        if (acted.is_zero()) continue;
        for (int n = 0; p + n <= K; ++n)
            for (const Label& l : M.basis(n))
                r.residual[static_cast<std::size_t>(p + n)] += psi({GradedVector(l), acted, GradedVector(l)});
    }
    r.pass = std::all_of(r.residual.begin(), r.residual.end(), [](const Rational& x) { return x.is_zero(); });
    return r;
}

SewnODEWitness sewn_ode_witness(const std::vector<QExpansion>& family, int K) {
    check_order(K);
    SewnODEWitness out;
    int r = static_cast<int>(family.size());
    if (r == 0) throw std::invalid_argument("empty family");
    Rational lo = family.front().offset();
    for (const auto& s : family)
        if (s.offset() < lo) lo = s.offset();
    std::vector<QExpansion> s;
    try {
        for (const auto& x : family) s.push_back(x.with_offset(lo));
    } catch (const std::invalid_argument& e) {
        out.reason = e.what();
        return out;
    }
    for (const auto& x : s)
        if (x.order() <= K) {
            out.reason = "a series is known only below q^" + std::to_string(x.order());
            return out;
        }
    out.offset = lo;

    // every diagonal entry comes before every off-diagonal one, so the free
    // unknowns left at 0 are off the diagonal whenever possible
    std::vector<std::pair<int, int>> slot;
    for (int i = 0; i < r; ++i) slot.emplace_back(i, i);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (i != j) slot.emplace_back(i, j);
    int per = r * r;
    out.unknowns = per * (K + 1);
    auto column = [&](int p, int q) { return q < r ? p * r + q : r * (K + 1) + p * (per - r) + (q - r); };
    auto at = [&](int n, int i) { return s[static_cast<std::size_t>(i)].coeff(n); };

    RMatrix A;
    RVector rhs;
    for (int N = 0; N <= K; ++N)
        for (int i = 0; i < r; ++i) {
            RVector row(static_cast<std::size_t>(out.unknowns));
            for (int p = 0; p <= N; ++p)
                for (int q = 0; q < per; ++q) {
                    auto [a, b] = slot[static_cast<std::size_t>(q)];
                    if (a == i) row[static_cast<std::size_t>(column(p, q))] = at(N - p, b);
                }
            A.push_back(std::move(row));
            rhs.push_back((lo + Rational(N)) * at(N, i));
        }
    LinearSolution sol = solve_linear(A, rhs, out.unknowns);
    out.rank = sol.rank;
    if (!sol.consistent) {
        out.reason = "no matrix series solves the family to q^" + std::to_string(K);
        return out;
    }
    out.exists = true;
    out.unique = sol.free.empty();
    for (int p = 0; p <= K; ++p) {
        RMatrix Ap(static_cast<std::size_t>(r), RVector(static_cast<std::size_t>(r)));
        for (int q = 0; q < per; ++q) {
            auto [a, b] = slot[static_cast<std::size_t>(q)];
            Ap[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = sol.x[static_cast<std::size_t>(column(p, q))];
        }
        out.A.push_back(std::move(Ap));
    }
    for (int N = 0; N <= K; ++N)
        for (int i = 0; i < r; ++i) {
            Rational lhs = (lo + Rational(N)) * at(N, i), acc;
            for (int p = 0; p <= N; ++p)
                for (int j = 0; j < r; ++j)
                    acc += out.A[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                           at(N - p, j);
            if (acc != lhs) throw std::logic_error("matrix series fails to reproduce the family");
        }
    if (!out.unique)
        out.reason = "rank " + std::to_string(out.rank) + " of " + std::to_string(out.unknowns) +
                     " unknowns: A is not pinned down at this cap";
    return out;
}

}  // namespace voa
