#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "levysub/levy_measure.hpp"
#include "levysub/quadrature.hpp"
#include "levysub/stats.hpp"

namespace levysub {

/// Numeric cutoff below which Psi(1) counts as the excluded constant-zero
/// subordinator.
inline constexpr double kDegeneracyThreshold = 1e-14;

/// Full parameterization of a (possibly killed) subordinator law:
/// kill rate alpha >= 0, drift beta >= 0 and a Levy measure.
struct LevyTriple {
    double kill_rate = 0.0;
    double drift = 0.0;
    std::optional<LevyMeasureSpec> measure;

    LevyTriple(double kill_rate_, double drift_, std::optional<LevyMeasureSpec> measure_)
        : kill_rate(kill_rate_), drift(drift_), measure(std::move(measure_)) {
        if (kill_rate < 0.0 || drift < 0.0)
            throw std::domain_error("LevyTriple: kill rate and drift must be nonnegative");
        if (kill_rate == 0.0 && drift == 0.0 && !measure)
            throw std::domain_error("LevyTriple: the constant-zero subordinator is excluded");
    }

    bool strict() const { return kill_rate == 0.0; }
};

enum class ActivityClass { finite, infinite };

/// Laplace exponent Psi(u) = alpha + beta*u + integral of (1-e^{-ux}) dLambda.
/// Named families evaluate in closed form; GenericDensity goes through the
/// singularity-aware quadrature.
inline double laplace_exponent(const LevyTriple& triple, double u) {
    if (!(u >= 0.0)) throw std::domain_error("laplace_exponent: u must be nonnegative");
    double psi = triple.kill_rate + triple.drift * u;
    if (!triple.measure || u == 0.0) return psi;
    const LevyMeasureSpec& spec = *triple.measure;
    if (const auto* g = std::get_if<GammaFamily>(&spec)) {
        psi += g->a * std::log1p(u / g->b);
    } else if (const auto* s = std::get_if<StableFamily>(&spec)) {
        psi += s->c * std::pow(u, s->index);
    } else if (const auto* f = std::get_if<FiniteAtomic>(&spec)) {
        for (const auto& atom : f->atoms) psi += atom.w * -std::expm1(-u * atom.x);
    } else {
        const auto& d = std::get<GenericDensity>(spec);
        psi += integrate_positive_axis_or_throw(
            [&](double x) { return -std::expm1(-u * x) * d.density(x); }, d.support_cut);
    }
    return psi;
}

inline void require_strict_nondegenerate(const LevyTriple& triple, const char* who) {
    if (!triple.strict()) throw std::domain_error(std::string(who) + ": triple must be strict");
    if (laplace_exponent(triple, 1.0) < kDegeneracyThreshold)
        throw std::domain_error(std::string(who) + ": degenerate (zero) subordinator");
}

/// psi = Psi(1), the rate of the Poisson process counting the jumps of the
/// subordinated Poisson process.
inline double leading_rate(const LevyTriple& triple) {
    require_strict_nondegenerate(triple, "leading_rate");
    return laplace_exponent(triple, 1.0);
}

namespace detail {

// log of x^j e^{-x} / j!; keeps huge j and tiny x in range.
inline double log_poisson_weight(double x, double j) {
    return j * std::log(x) - x - std::lgamma(j + 1.0);
}

}  // namespace detail

/// Atom m_j of the Levy measure of the subordinated Poisson process:
/// m_1 = beta + int x e^{-x} dLambda, m_j = int x^j/j! e^{-x} dLambda (j>=2).
inline double jump_atom_mass(const LevyTriple& triple, int j) {
    if (j < 1) throw std::domain_error("jump_atom_mass: j must be >= 1");
    if (!triple.strict()) throw std::domain_error("jump_atom_mass: triple must be strict");
    const double dj = static_cast<double>(j);
    double mass = (j == 1) ? triple.drift : 0.0;
    if (!triple.measure) return mass;
    const LevyMeasureSpec& spec = *triple.measure;
    if (const auto* g = std::get_if<GammaFamily>(&spec)) {
        // a/j! int x^{j-1} e^{-(1+b)x} dx = a / (j (1+b)^j)
        mass += g->a * std::exp(-std::log(dj) - dj * std::log1p(g->b));
    } else if (const auto* s = std::get_if<StableFamily>(&spec)) {
        // c idx / Gamma(1-idx) * Gamma(j-idx) / j!
        mass += s->c * s->index *
                std::exp(std::lgamma(dj - s->index) - std::lgamma(dj + 1.0) -
                         std::lgamma(1.0 - s->index));
    } else if (const auto* f = std::get_if<FiniteAtomic>(&spec)) {
        for (const auto& atom : f->atoms)
            mass += atom.w * std::exp(detail::log_poisson_weight(atom.x, dj));
    } else {
        const auto& d = std::get<GenericDensity>(spec);
        mass += integrate_positive_axis_or_throw(
            [&](double x) { return std::exp(detail::log_poisson_weight(x, dj)) * d.density(x); },
            d.support_cut);
    }
    return mass;
}

/// Analytic upper bound on the mass left beyond j_max: sum_{j>j_max} m_j.
inline double jump_atom_tail_bound(const LevyTriple& triple, int j_max) {
    if (j_max < 1) throw std::domain_error("jump_atom_tail_bound: j_max must be >= 1");
    if (!triple.strict()) throw std::domain_error("jump_atom_tail_bound: triple must be strict");
    if (!triple.measure) return 0.0;
    const double dj = static_cast<double>(j_max);
    const LevyMeasureSpec& spec = *triple.measure;
    if (const auto* g = std::get_if<GammaFamily>(&spec)) {
        // sum_{j>J} a/(j(1+b)^j) <= a (1+b)^{-J} / (b (J+1))
        return g->a * std::exp(-dj * std::log1p(g->b)) / (g->b * (dj + 1.0));
    }
    if (const auto* s = std::get_if<StableFamily>(&spec)) {
        // Gautschi: Gamma(j-idx)/j! < (j-1)^{-1-idx}, summed by integral comparison.
        const double idx = s->index;
        const double sum_bound = std::pow(dj, -1.0 - idx) + std::pow(dj, -idx) / idx;
        return s->c * idx / std::tgamma(1.0 - idx) * sum_bound;
    }
    if (const auto* f = std::get_if<FiniteAtomic>(&spec)) {
        // exact: sum_w w * P[Poisson(x) > J] through the incomplete gamma
        double tail = 0.0;
        for (const auto& atom : f->atoms)
            tail += atom.w * regularized_gamma_p(dj + 1.0, atom.x);
        return tail;
    }
    const auto& d = std::get<GenericDensity>(spec);
    return integrate_positive_axis_or_throw(
        [&](double x) { return regularized_gamma_p(dj + 1.0, x) * d.density(x); },
        d.support_cut);
}

/// Probability generating function of the jumps of the subordinated Poisson
/// process, f(z) = (Psi(1) - Psi(1-z)) / Psi(1).
inline double jump_pgf(const LevyTriple& triple, double z) {
    if (!(z >= 0.0 && z <= 1.0)) throw std::domain_error("jump_pgf: z must lie in [0,1]");
    require_strict_nondegenerate(triple, "jump_pgf");
    const double psi1 = laplace_exponent(triple, 1.0);
    return (psi1 - laplace_exponent(triple, 1.0 - z)) / psi1;
}

/// Truncated atom expansion (1/psi) sum_{j<=j_max} z^j m_j, the independent
/// series route to jump_pgf.
inline double jump_pgf_series(const LevyTriple& triple, double z, int j_max) {
    if (!(z >= 0.0 && z <= 1.0)) throw std::domain_error("jump_pgf_series: z must lie in [0,1]");
    if (j_max < 1) throw std::domain_error("jump_pgf_series: j_max must be >= 1");
    require_strict_nondegenerate(triple, "jump_pgf_series");
    const double psi = laplace_exponent(triple, 1.0);
    double sum = 0.0;
    double zj = 1.0;
    for (int j = 1; j <= j_max; ++j) {
        zj *= z;
        if (zj == 0.0) break;
        sum += zj * jump_atom_mass(triple, j);
    }
    return sum / psi;
}

/// Law of the subordinator jump S(tau_k) - S(tau_k - 0) at a Poisson
/// crossing time: (1/Psi(1)) ((1-e^{-x}) Lambda(dx) + beta delta_0).
struct SJumpLaw {
    double atom_at_zero = 0.0;
    /// populated for atomic measures: (location, probability)
    std::vector<std::pair<double, double>> atoms;
    /// populated for density measures: normalized density of the continuous part
    std::function<double(double)> density;
    double continuous_mass = 0.0;
};

inline SJumpLaw s_jump_law(const LevyTriple& triple) {
    require_strict_nondegenerate(triple, "s_jump_law");
    const double psi = laplace_exponent(triple, 1.0);
    SJumpLaw law;
    law.atom_at_zero = triple.drift / psi;
    if (!triple.measure) return law;
    const LevyMeasureSpec& spec = *triple.measure;
    if (const auto* f = std::get_if<FiniteAtomic>(&spec)) {
        for (const auto& atom : f->atoms) {
            const double p = -std::expm1(-atom.x) * atom.w / psi;
            law.atoms.emplace_back(atom.x, p);
            law.continuous_mass += p;
        }
        return law;
    }
    law.density = [spec, psi](double x) {
        return -std::expm1(-x) * measure_density(spec, x) / psi;
    };
    law.continuous_mass =
        integrate_positive_axis_or_throw(law.density, quadrature_cut(spec));
    return law;
}

/// Finite vs infinite activity: total mass of Lambda. The named families
/// are decided analytically; GenericDensity by attempted quadrature of the
/// total mass, whose failure to decay near 0 signals divergence.
inline ActivityClass activity_class(const LevyTriple& triple) {
    if (!triple.measure) return ActivityClass::finite;
    const LevyMeasureSpec& spec = *triple.measure;
    if (std::holds_alternative<FiniteAtomic>(spec)) return ActivityClass::finite;
    if (std::holds_alternative<GammaFamily>(spec) || std::holds_alternative<StableFamily>(spec))
        return ActivityClass::infinite;
    const auto& d = std::get<GenericDensity>(spec);
    const QuadratureResult total =
        integrate_positive_axis([&](double x) { return d.density(x); }, d.support_cut, 1e-9, 1e-7);
    return total.converged ? ActivityClass::finite : ActivityClass::infinite;
}

/// Short human-readable tag, e.g. "gamma(a=1,b=2)"; used to match samplers
/// against triples and to stamp exported files.
inline std::string describe(const LevyTriple& triple) {
    char buf[160];
    std::string tag;
    if (!triple.measure) {
        tag = "drift";
    } else if (const auto* g = std::get_if<GammaFamily>(&*triple.measure)) {
        std::snprintf(buf, sizeof buf, "gamma(a=%g,b=%g)", g->a, g->b);
        tag = buf;
    } else if (const auto* s = std::get_if<StableFamily>(&*triple.measure)) {
        std::snprintf(buf, sizeof buf, "stable(index=%g,c=%g)", s->index, s->c);
        tag = buf;
    } else if (const auto* f = std::get_if<FiniteAtomic>(&*triple.measure)) {
        tag = "atomic(";
        for (std::size_t i = 0; i < f->atoms.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%s%g:%g", i ? "," : "", f->atoms[i].x, f->atoms[i].w);
            tag += buf;
        }
        tag += ")";
    } else {
        tag = "generic";
    }
    std::snprintf(buf, sizeof buf, "[beta=%g,alpha=%g]", triple.drift, triple.kill_rate);
    return tag + buf;
}

}  // namespace levysub
