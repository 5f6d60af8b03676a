#pragma once

#include "voa/graded.hpp"
#include "voa/memo.hpp"
#include "voa/rational.hpp"
#include "voa/virasoro.hpp"

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace voa {

class Module;

// A VOA strongly generated by one field u: every basis label (p1 >= p2 >= ...)
// is u_{k(p1)} u_{k(p2)} ... 1, and the modes of a general vector are rebuilt
// from those of u by the iterate formula.
class VertexAlgebra {
public:
    virtual ~VertexAlgebra() = default;

    virtual std::string name() const = 0;
    virtual Rational central_charge() const = 0;
    virtual int min_part() const = 0;          // smallest part allowed in a vacuum-module label
    virtual int generator_weight() const = 0;  // wt(u)
    virtual int generator_index(int part) const = 0;  // k with u_k creating part
    virtual GradedVector conformal_vector() const = 0;

    GradedVector vacuum() const { return GradedVector(Label{}); }
    std::vector<Label> basis(int weight) const { return partitions(weight, min_part()); }
    GradedSpace space(int cap) const;

    // The VOA as a module over itself.
    virtual const Module& adjoint() const = 0;

    GradedVector L(int n, const GradedVector& v) const;
};

class Module : public VirasoroAction {
public:
    explicit Module(const VertexAlgebra& alg) : alg_(&alg) {}

    const VertexAlgebra& algebra() const { return *alg_; }
    virtual std::string name() const = 0;
    virtual Rational delta() const = 0;  // L0 = delta + L~0
    virtual std::vector<Label> basis(int weight) const = 0;
    virtual bool is_dual() const { return false; }

    // Y_W(v)_n e_w for basis labels v of V and w of W; cached.
    GradedVector mode(const Label& v, int n, const Label& w) const;
    // Bilinear extension.
    GradedVector mode(const GradedVector& v, int n, const GradedVector& w) const;

    GradedVector L(int n, const GradedVector& w) const override;
    GradedSpace space(int cap) const;

protected:
    virtual GradedVector compute_mode(const Label& v, int n, const Label& w) const = 0;

private:
    const VertexAlgebra* alg_;
    Memo<std::tuple<Label, int, Label>, GradedVector> cache_;
};

// A module whose modes are computed from the generator action u_k.
class GeneratedModule : public Module {
public:
    using Module::Module;
    // u_k e_w; cached.
    GradedVector generator(int k, const Label& w) const;
    GradedVector generator(int k, const GradedVector& w) const;

protected:
    virtual GradedVector compute_generator(int k, const Label& w) const = 0;
    GradedVector compute_mode(const Label& v, int n, const Label& w) const override;

private:
    Memo<std::pair<int, Label>, GradedVector> gen_cache_;
};

// Fock module F_mu of the rank-one Heisenberg VOA: alpha_n alpha_m commutator
// n delta_{n,-m}; labels are partitions (parts >= 1); alpha_0 = mu.
class FockModule : public GeneratedModule {
public:
    FockModule(const VertexAlgebra& alg, Rational mu);
    std::string name() const override;
    Rational delta() const override { return mu_ * mu_ / Rational(2); }
    std::vector<Label> basis(int weight) const override { return partitions(weight, 1); }
    const Rational& mu() const { return mu_; }

protected:
    GradedVector compute_generator(int k, const Label& w) const override;

private:
    Rational mu_;
};

// Highest-weight module of the Virasoro algebra with central charge c and
// L0-eigenvalue h on the highest-weight vector. With vacuum = true, L_{-1}
// kills the highest-weight vector (h must be 0): the universal Virasoro VOA.
class VirasoroModule : public GeneratedModule {
public:
    VirasoroModule(const VertexAlgebra& alg, Rational h, bool vacuum);
    std::string name() const override;
    Rational delta() const override { return h_; }
    std::vector<Label> basis(int weight) const override;

    // L_n e_w in the PBW basis
    GradedVector virasoro(int n, const Label& w) const { return generator(n + 1, w); }

protected:
    GradedVector compute_generator(int k, const Label& w) const override;

private:
    GradedVector apply(int n, const GradedVector& w) const;
    Rational h_;
    bool vacuum_;
};

class HeisenbergAlgebra : public VertexAlgebra {
public:
    HeisenbergAlgebra();
    std::string name() const override { return "heisenberg"; }
    Rational central_charge() const override { return Rational(1); }
    int min_part() const override { return 1; }
    int generator_weight() const override { return 1; }
    int generator_index(int part) const override { return -part; }
    GradedVector conformal_vector() const override;
    const Module& adjoint() const override { return *vacuum_; }

private:
    std::unique_ptr<FockModule> vacuum_;
};

class VirasoroAlgebra : public VertexAlgebra {
public:
    explicit VirasoroAlgebra(Rational c);
    std::string name() const override { return "virasoro"; }
    Rational central_charge() const override { return c_; }
    int min_part() const override { return 2; }
    int generator_weight() const override { return 2; }
    int generator_index(int part) const override { return 1 - part; }
    GradedVector conformal_vector() const override { return GradedVector(Label({2})); }
    const Module& adjoint() const override { return *vacuum_; }

private:
    Rational c_;
    std::unique_ptr<VirasoroModule> vacuum_;
};

// W' with Y_{W'}(v)_n = sum_m (-1)^{wt v}/m! Y_W(L_1^m v)^t_{-n-m-2+2 wt v}.
class ContragredientModule : public Module {
public:
    explicit ContragredientModule(const Module& base);
    std::string name() const override { return base_->name() + "'"; }
    Rational delta() const override { return base_->delta(); }
    std::vector<Label> basis(int weight) const override { return base_->basis(weight); }
    bool is_dual() const override { return !base_->is_dual(); }
    const Module& base() const { return *base_; }

protected:
    GradedVector compute_mode(const Label& v, int n, const Label& w) const override;

private:
    const Module* base_;
};

// Also the way to dualize a dual: the copy constructor would not do that.
std::unique_ptr<ContragredientModule> contragredient(const Module& base);

std::shared_ptr<HeisenbergAlgebra> heisenberg_model();
std::shared_ptr<VirasoroAlgebra> virasoro_model(const Rational& c);

// Matrix of Y(v)_n from the weight <= source_cap part of a module.
struct ModeOperator {
    int source_cap = 0;
    int target_cap = 0;
    std::vector<Label> columns;  // source basis
    std::vector<Label> rows;     // target basis
    std::vector<std::vector<Rational>> entries;  // entries[row][col]

    GradedVector apply(const GradedVector& w) const;
    friend bool operator==(const ModeOperator&, const ModeOperator&) = default;
};

// target_cap < 0 picks the smallest cap holding every image. An explicit cap
// that is too small is an error, never a silent truncation.
ModeOperator mode_matrix(const Module& m, const GradedVector& v, int n, int cap,
                         int target_cap = -1);
ModeOperator contragredient_mode(const Module& m, const Label& v, int n, int cap);

// Weight of a homogeneous vector; throws if it is not homogeneous.
int homogeneous_weight(const GradedVector& v);

struct LRange {
    int lo = 0;
    int hi = -1;  // empty when hi < lo
};

struct JacobiResult {
    bool pass = false;
    GradedVector lhs;
    GradedVector rhs;
    LRange iterate_range;   // sum over Y(Y(u)_{n+l} v)_{m+h-l}
    LRange first_range;     // sum over Y(u)_{m+n-l} Y(v)_{h+l}
    LRange second_range;    // sum over Y(v)_{n+h-l} Y(u)_{m+l}
};

// Both sides of the Jacobi identity applied to w. u, v, w may be inhomogeneous;
// the ranges come from lower truncation at their top weights.
JacobiResult jacobi_check(const Module& m, const GradedVector& u, const GradedVector& v,
                          const GradedVector& w, int mm, int n, int h);

// [Y(u)_m, Y(v)_h] w  and  sum_l C(m,l) Y(Y(u)_l v)_{m+h-l} w.
std::pair<GradedVector, GradedVector> commutator_sides(const Module& m, const GradedVector& u,
                                                       const GradedVector& v,
                                                       const GradedVector& w, int mm, int h);

}  // namespace voa
