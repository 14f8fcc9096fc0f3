#pragma once

#include "hoeffding_urn/measure.hpp"
#include "hoeffding_urn/symmetric.hpp"

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hoeffding_urn {

/// phi_n^(0)(0^(k)) = (-1)^k P_n(0^(0)) / P_n(0^(k)); spans the completely
/// degenerate kernels of arity n.
SymmetricFunction canonical_degenerate_kernel(const DeFinettiMeasure& measure, int n);

/// Null space of kernel -> degeneracy_residual(kernel), by exact elimination.
/// Each basis element is normalized so its value at 0^(0) is 1 when that
/// value is nonzero.
std::vector<SymmetricFunction> xi_basis(const DeFinettiMeasure& measure, int n);

/// k+1 generators of SU_k(X_[n]): the lifts of the arity-j all-ones
/// indicator kernels, j = 0..k. Rank is checked against the Gram matrix.
std::vector<SymmetricFunction> su_basis(const DeFinettiMeasure& measure, int n, int k);

/// Orthogonal projection of t onto span(basis) via exact normal equations.
SymmetricFunction project_onto(const SymmetricFunction& t, const std::vector<SymmetricFunction>& basis,
                               const ConfigTable& table);

struct HoeffdingDecomposition {
    int n = 0;
    std::string measure_digest;
    std::vector<SymmetricFunction> components;  // components[k] in SH_k
    Rational mean;

    bool operator==(const HoeffdingDecomposition&) const = default;
};

HoeffdingDecomposition hoeffding_projection(const SymmetricFunction& t, const DeFinettiMeasure& measure);

/// Inclusion-exclusion form of pi[T, SH_k] for i.i.d. Bernoulli(p):
/// sum_a (-1)^(k-a) C(n-a, k-a) sum_{|A|=a} E[T - E T | X_A].
SymmetricFunction iid_projection(const SymmetricFunction& t, const Rational& p, int k);

struct Theta3 {
    Rational theta11;
    Rational theta21;
    Rational theta22;

    bool operator==(const Theta3&) const = default;
};

/// Coefficients as printed for the Polya n = 3 projection formula.
Theta3 polya_theta3(const Rational& alpha, const Rational& beta);

/// The same coefficients recovered from the Gram-route projection of a
/// generic statistic; these are the values that actually reproduce SH_1 and
/// SH_2 components at n = 3.
Theta3 polya_theta3_fitted(const Rational& alpha, const Rational& beta);

/// sum_a theta^(k,a) sum_{|A|=a} E[T - E T | X_A] for an arity-3 T, k in {1, 2}.
SymmetricFunction theta3_projection(const SymmetricFunction& t, const DeFinettiMeasure& measure,
                                    const Theta3& theta, int k);

/// Centered sum over a-subsets of E[T - E T | X_A], lifted to arity n.
SymmetricFunction lifted_centered_conditional(const SymmetricFunction& t, const DeFinettiMeasure& measure, int a);

Rational prop1_residual(const DeFinettiMeasure& measure, int n, int u, int z);
Rational prop1_residual(const ConfigTable& table, int n, int u, int z);

Rational weak_independence_residual(const DeFinettiMeasure& measure, int n, int u, int z);
Rational weak_independence_residual(const ConfigTable& table, int n, int u, int z);

/// SH_k == span(lift(Xi_k)) for every k = 1..n, by rank of stacked generators.
bool definitionA_check(const DeFinettiMeasure& measure, int n);

struct Triple {
    int n;
    int u;
    int z;

    auto operator<=>(const Triple&) const = default;
};

enum class CheckMethod { Prop1, WeakIndep, Definition, All };
enum class Verdict { DecomposableUpToNMax, NotDecomposable };

std::string_view method_name(CheckMethod m);
std::optional<CheckMethod> parse_method(std::string_view text);
std::string_view verdict_name(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);

struct DecomposabilityReport {
    int n_max = 0;
    CheckMethod method = CheckMethod::All;
    std::string measure_digest;
    std::map<Triple, Rational> residuals;        // Proposition-1 route
    std::map<Triple, Rational> cross_residuals;  // weak-independence route
    std::map<int, bool> definition_a;            // subspace-equality route, per n
    Verdict verdict = Verdict::DecomposableUpToNMax;
    std::optional<Triple> witness;                // first nonzero residual
    std::optional<int> definition_witness;        // first n where subspaces differ

    bool operator==(const DecomposabilityReport&) const = default;
};

/// Invoked after each level n with the partial report so far.
using LevelCallback = std::function<void(int n, const DecomposabilityReport& partial)>;

DecomposabilityReport check_decomposable(const DeFinettiMeasure& measure, int n_max,
                                         CheckMethod method = CheckMethod::All,
                                         const LevelCallback& on_level = {});

}  // namespace hoeffding_urn
