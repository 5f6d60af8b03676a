#include "voa/sphere.hpp"

#include "voa/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace voa {

SpherePoints::SpherePoints(std::vector<SpherePoint> pts) : pts_(std::move(pts)) {
    for (std::size_t i = 0; i < pts_.size(); ++i)
        for (std::size_t j = i + 1; j < pts_.size(); ++j)
            if (pts_[i] == pts_[j]) throw std::invalid_argument("repeated marked point " + pts_[i].str());
}

bool SpherePoints::has_infinity() const { return infinity_index().has_value(); }

std::optional<std::size_t> SpherePoints::infinity_index() const {
    for (std::size_t i = 0; i < pts_.size(); ++i)
        if (pts_[i].at_infinity) return i;
    return std::nullopt;
}

std::vector<std::size_t> SpherePoints::finite_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts_.size(); ++i)
        if (!pts_[i].at_infinity) out.push_back(i);
    return out;
}

bool SpherePoints::contains(const SpherePoint& p) const {
    return std::find(pts_.begin(), pts_.end(), p) != pts_.end();
}

SpherePoints SpherePoints::with(const SpherePoint& p) const {
    std::vector<SpherePoint> v = pts_;
    v.push_back(p);
    return SpherePoints(std::move(v));
}

Poly poly_trim(Poly p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    return p;
}

int poly_degree(const Poly& p) { return static_cast<int>(poly_trim(p).size()) - 1; }

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return poly_trim(std::move(r));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero())
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return poly_trim(std::move(r));
}

Poly poly_scale(const Poly& a, const Rational& c) {
    Poly r = a;
    for (auto& x : r) x *= c;
    return poly_trim(std::move(r));
}

Rational poly_eval(const Poly& p, const Rational& x) {
    Rational r;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

Poly poly_taylor_shift(const Poly& p, const Rational& a) {
    Poly r;
    Poly power = {Rational(1)};
    Poly lin = {a, Rational(1)};
    for (const auto& c : p) {
        r = poly_add(r, poly_scale(power, c));
        power = poly_mul(power, lin);
    }
    return r;
}

Poly poly_linear_power(const Rational& a, int n) {
    if (n < 0) throw std::invalid_argument("negative power of a linear polynomial");
    Poly r = {Rational(1)};
    for (int i = 0; i < n; ++i) r = poly_mul(r, {-a, Rational(1)});
    return r;
}

namespace {

// p / (zeta - x), assuming p(x) = 0.
Poly divide_linear(const Poly& p, const Rational& x) {
    if (p.empty()) return {};
    Poly q(p.size() - 1);
    Rational carry;
    for (std::size_t i = p.size(); i-- > 1;) {
        carry = p[i] + carry * x;
        q[i - 1] = carry;
    }
    return poly_trim(std::move(q));
}

// Dense product truncated to length L.
std::vector<Rational> mul_trunc(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                std::size_t L) {
    std::vector<Rational> r(L);
    for (std::size_t i = 0; i < a.size() && i < L; ++i)
        if (!a[i].is_zero())
            for (std::size_t j = 0; j < b.size() && i + j < L; ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::string poly_str(const Poly& p, const std::string& var) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i].is_zero()) continue;
        Rational c = p[i];
        if (!first) os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0) os << "-";
        c = abs(c);
        bool unit = c == Rational(1);
        if (!unit || i == 0) os << c.str();
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

}  // namespace

RationalFunction::RationalFunction(Poly num, std::vector<std::pair<Rational, int>> poles)
    : num_(poly_trim(std::move(num))) {
    std::map<Rational, int> merged;
    for (const auto& [x, n] : poles) merged[x] += n;
    for (auto& [x, n] : merged) {
        if (n < 0) {
            num_ = poly_mul(num_, poly_linear_power(x, -n));
            n = 0;
        }
        while (n > 0 && !num_.empty() && poly_eval(num_, x).is_zero()) {
            num_ = divide_linear(num_, x);
            --n;
        }
    }
    if (num_.empty()) return;
    for (const auto& [x, n] : merged)
        if (n > 0) poles_.emplace_back(x, n);
}

RationalFunction RationalFunction::product_of_powers(const std::vector<Rational>& xs,
                                                     const std::vector<int>& exps) {
    if (xs.size() != exps.size()) throw std::invalid_argument("one exponent per center");
    std::vector<std::pair<Rational, int>> poles;
    for (std::size_t i = 0; i < xs.size(); ++i) poles.emplace_back(xs[i], -exps[i]);
    return RationalFunction({Rational(1)}, std::move(poles));
}

Rational RationalFunction::operator()(const Rational& y) const {
    Rational den(1);
    for (const auto& [x, n] : poles_) {
        if (x == y) throw std::domain_error("evaluation at a pole " + y.str());
        den *= pow(y - x, n);
    }
    return poly_eval(num_, y) / den;
}

TruncSeries RationalFunction::expand(const SpherePoint& p, int order, const std::string& var) const {
    if (num_.empty()) return TruncSeries::zero(var, order);
    if (!p.at_infinity) {
        int np = pole_order(p);
        int L = order + np;
        if (L <= 0) return TruncSeries::zero(var, order);
        std::vector<Rational> acc = poly_taylor_shift(num_, p.x);
        acc.resize(static_cast<std::size_t>(L));
        for (const auto& [x, n] : poles_) {
            if (x == p.x) continue;
            // (t + (p - x))^{-n}
            Rational d = p.x - x;
            std::vector<Rational> f(static_cast<std::size_t>(L));
            for (int k = 0; k < L; ++k) f[static_cast<std::size_t>(k)] = binomial(-n, k) * pow(d, -n - k);
            acc = mul_trunc(acc, f, static_cast<std::size_t>(L));
        }
        return TruncSeries(var, -np, order, std::move(acc)).normalized();
    }
    int deg = poly_degree(num_);
    int total = 0;
    for (const auto& [x, n] : poles_) total += n;
    int shift = total - deg;
    int L = order - shift;
    if (L <= 0) return TruncSeries::zero(var, order);
    std::vector<Rational> acc(num_.rbegin(), num_.rend());
    acc.resize(static_cast<std::size_t>(L));
    for (const auto& [x, n] : poles_) {
        // (1 - x s)^{-n}
        std::vector<Rational> f(static_cast<std::size_t>(L));
        for (int k = 0; k < L; ++k) f[static_cast<std::size_t>(k)] = binomial(n + k - 1, k) * pow(x, k);
        acc = mul_trunc(acc, f, static_cast<std::size_t>(L));
    }
    return TruncSeries(var, shift, order, std::move(acc)).normalized();
}

TruncSeries RationalFunction::expand_form(const SpherePoint& p, int order, const std::string& var) const {
    if (!p.at_infinity) return expand(p, order, var);
    // d zeta = -s^{-2} ds
    return expand(p, order + 2, var).shifted(-2).scaled(Rational(-1));
}

int RationalFunction::pole_order(const SpherePoint& p) const {
    if (num_.empty()) return 0;
    if (p.at_infinity) {
        int total = 0;
        for (const auto& [x, n] : poles_) total += n;
        return std::max(0, poly_degree(num_) - total);
    }
    for (const auto& [x, n] : poles_)
        if (x == p.x) return n;
    return 0;
}

RationalFunction RationalFunction::scaled(const Rational& a) const {
    return RationalFunction(poly_scale(num_, a), poles_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    std::map<Rational, int> common;
    for (const auto& [x, n] : a.poles_) common[x] = std::max(common[x], n);
    for (const auto& [x, n] : b.poles_) common[x] = std::max(common[x], n);
    auto lift = [&](const RationalFunction& f) {
        Poly p = f.num_;
        for (const auto& [x, n] : common) p = poly_mul(p, poly_linear_power(x, n - f.pole_order(SpherePoint::finite(x))));
        return p;
    };
    return RationalFunction(poly_add(lift(a), lift(b)), {common.begin(), common.end()});
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    std::vector<std::pair<Rational, int>> poles = a.poles_;
    poles.insert(poles.end(), b.poles_.begin(), b.poles_.end());
    return RationalFunction(poly_mul(a.num_, b.num_), std::move(poles));
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return (a + b.scaled(Rational(-1))).is_zero();
}

std::string RationalFunction::str(const std::string& var) const {
    std::string n = poly_str(num_, var);
    if (poles_.empty()) return n;
    std::ostringstream den;
    bool first = true;
    for (const auto& [x, k] : poles_) {
        if (!first) den << "*";
        first = false;
        if (x.is_zero()) den << var;
        else den << "(" << var << (x.sign() > 0 ? " - " : " + ") << abs(x).str() << ")";
        if (k > 1) den << "^" << k;
    }
    bool simple_num = num_.size() == 1;
    return (simple_num ? n : "(" + n + ")") + "/(" + den.str() + ")";
}

std::string ResidueWitness::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (exponents[i] == 0) continue;
        if (centers[i].is_zero()) os << "z";
        else os << "(z" << (centers[i].sign() > 0 ? " - " : " + ") << abs(centers[i]).str() << ")";
        if (exponents[i] != 1) os << "^" << exponents[i];
        os << " ";
    }
    os << "dz: residue sum " << residue_sum.str();
    return os.str();
}

namespace {

struct Frame {
    std::vector<Rational> centers;
    std::vector<int> known;  // known order of the tail at each center (0 if unmarked)
    int known_infinity = 0;
};

Frame frame_of(const SpherePoints& pts, const LaurentTail& tails) {
    if (tails.at.size() != pts.size()) throw std::invalid_argument("one tail per marked point");
    Frame f;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].at_infinity) f.known_infinity = tails.at[i].order();
        else {
            f.centers.push_back(pts[i].x);
            f.known.push_back(tails.at[i].order());
        }
    }
    if (f.centers.empty()) {
        f.centers.push_back(Rational(0));
        f.known.push_back(0);
    }
    return f;
}

// The global forms (zeta - c_1)^m prod_j (zeta - c_j)^{-k_j} d zeta, m = 0..D,
// a basis of the forms with poles bounded by the known orders.
std::vector<std::vector<int>> dual_basis_exponents(const Frame& f) {
    int D = f.known_infinity - 2;
    for (int k : f.known) D += k;
    std::vector<std::vector<int>> out;
    for (int m = 0; m <= D; ++m) {
        std::vector<int> e;
        for (int k : f.known) e.push_back(-k);
        e[0] += m;
        out.push_back(std::move(e));
    }
    return out;
}

Rational pairing_with_tails(const SpherePoints& pts, const LaurentTail& tails,
                            const RationalFunction& lambda) {
    Rational sum;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const TruncSeries& s = tails.at[i];
        int need = std::max(0, -s.floor()) + 1;
        TruncSeries l = lambda.expand_form(pts[i], need, s.var());
        sum += series_residue(s * l);
    }
    return sum;
}

std::optional<ResidueWitness> find_violation(const SpherePoints& pts, const LaurentTail& tails) {
    Frame f = frame_of(pts, tails);
    for (const auto& e : dual_basis_exponents(f)) {
        Rational r = pairing_with_tails(pts, tails, RationalFunction::product_of_powers(f.centers, e));
        if (!r.is_zero()) return ResidueWitness{f.centers, e, r};
    }
    return std::nullopt;
}

struct Reconstruction {
    bool consistent = false;
    bool unique = false;
    RationalFunction section;
};

// Unknown P with f = P / prod (zeta - x_i)^{N_i}; every known coefficient of
// every tail is one linear equation.
Reconstruction reconstruct(const SpherePoints& pts, const LaurentTail& tails) {
    std::vector<std::pair<Rational, int>> poles;
    int degree = 0;
    std::vector<int> lo(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const TruncSeries& s = tails.at[i];
        int N = std::max({0, -s.floor(), -s.order()});
        lo[i] = std::min(s.floor(), -N);
        degree += N;
        if (!pts[i].at_infinity) poles.emplace_back(pts[i].x, N);
    }
    int unknowns = degree + 1;
    RMatrix A;
    RVector b;
    std::vector<std::vector<TruncSeries>> basis_exp(static_cast<std::size_t>(unknowns));
    for (int a = 0; a < unknowns; ++a) {
        Poly mono(static_cast<std::size_t>(a + 1));
        mono[static_cast<std::size_t>(a)] = Rational(1);
        RationalFunction ba(mono, poles);
        for (std::size_t i = 0; i < pts.size(); ++i)
            basis_exp[static_cast<std::size_t>(a)].push_back(ba.expand(pts[i], tails.at[i].order(), tails.at[i].var()));
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (int e = lo[i]; e < tails.at[i].order(); ++e) {
            RVector row;
            for (int a = 0; a < unknowns; ++a) row.push_back(basis_exp[static_cast<std::size_t>(a)][i].coeff(e));
            A.push_back(std::move(row));
            b.push_back(tails.at[i].coeff(e));
        }
    LinearSolution sol = solve_linear(A, b, unknowns);
    Reconstruction r;
    r.consistent = sol.consistent;
    r.unique = sol.rank == unknowns;
    if (sol.consistent) {
        Poly p(sol.x.begin(), sol.x.end());
        r.section = RationalFunction(p, poles);
    }
    return r;
}

void confirm_tails(const SpherePoints& pts, const LaurentTail& tails, const RationalFunction& f) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const TruncSeries& s = tails.at[i];
        TruncSeries e = f.expand(pts[i], s.order(), s.var());
        if (!agree_to(e, s, s.order()))
            throw std::logic_error("reconstructed section does not re-expand to the tail at " + pts[i].str());
    }
}

}  // namespace

GlueResult strong_residue_check(const SpherePoints& pts, const LaurentTail& tails) {
    GlueResult g;
    g.violation = find_violation(pts, tails);
    if (g.violation) return g;
    Reconstruction r = reconstruct(pts, tails);
    if (!r.consistent) throw std::logic_error("residue pairings vanish but the tails do not glue");
    if (!r.unique) {
        g.underdetermined = true;
        return g;
    }
    confirm_tails(pts, tails, r.section);
    g.pass = true;
    g.section = r.section;
    return g;
}

GlueResult rational_glue(const Rational& z0, const TruncSeries& at_zero, const TruncSeries& at_z0,
                         const TruncSeries& at_infinity) {
    if (z0.is_zero()) throw std::invalid_argument("z0 must differ from 0");
    SpherePoints pts({SpherePoint::finite(Rational(0)), SpherePoint::finite(z0), SpherePoint::infinity()});
    LaurentTail tails{{at_zero, at_z0, at_infinity}};
    GlueResult g;
    Reconstruction r = reconstruct(pts, tails);
    if (!r.consistent) {
        g.violation = find_violation(pts, tails);
        if (!g.violation) throw std::logic_error("tails do not glue but no residue pairing detects it");
        return g;
    }
    if (!r.unique) {
        g.underdetermined = true;
        return g;
    }
    confirm_tails(pts, tails, r.section);
    g.pass = true;
    g.section = r.section;
    return g;
}

Rational residue_pairing(const SpherePoints& pts, const std::vector<TruncSeries>& sigma,
                         const RationalFunction& t) {
    if (sigma.size() != pts.size()) throw std::invalid_argument("one cocycle component per marked point");
    Rational sum;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (sigma[i].is_zero()) continue;
        int need = std::max(0, -sigma[i].valuation());
        sum += series_residue(sigma[i] * t.expand(pts[i], need, sigma[i].var()));
    }
    return sum;
}

}  // namespace voa
