#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "levysub/quadrature.hpp"

namespace levysub {

/// Levy measure with density a*e^{-bx}/x on (0,infty); infinite activity,
/// Laplace-exponent contribution a*log(1+u/b).
struct GammaFamily {
    double a;
    double b;
    GammaFamily(double a_, double b_) : a(a_), b(b_) {
        if (!(a > 0.0) || !(b > 0.0))
            throw std::domain_error("GammaFamily: parameters must be positive");
    }
};

/// Levy measure c*index/Gamma(1-index) * x^{-1-index}; contribution c*u^index.
struct StableFamily {
    double index;
    double c;
    StableFamily(double index_, double c_) : index(index_), c(c_) {
        if (!(index > 0.0 && index < 1.0))
            throw std::domain_error("StableFamily: index must lie strictly in (0,1)");
        if (!(c > 0.0)) throw std::domain_error("StableFamily: scale must be positive");
    }
};

/// Finitely many atoms (x_j, w_j); the compound Poisson case.
struct FiniteAtomic {
    struct Atom {
        double x;
        double w;
    };
    std::vector<Atom> atoms;
    explicit FiniteAtomic(std::vector<Atom> atoms_) : atoms(std::move(atoms_)) {
        if (atoms.empty()) throw std::domain_error("FiniteAtomic: needs at least one atom");
        for (const Atom& atom : atoms) {
            if (!(atom.x > 0.0) || !(atom.w > 0.0))
                throw std::domain_error("FiniteAtomic: atom locations and masses must be positive");
        }
    }
    double total_mass() const {
        double m = 0.0;
        for (const Atom& atom : atoms) m += atom.w;
        return m;
    }
};

/// User-supplied density with a quadrature split hint. Construction
/// enforces the admissibility condition: the integral of min(x,1) against
/// the density must converge with estimated error below 1e-6.
struct GenericDensity {
    std::function<double(double)> density;
    double support_cut;

    GenericDensity(std::function<double(double)> density_, double support_cut_ = 1.0)
        : density(std::move(density_)), support_cut(support_cut_) {
        if (!density) throw std::domain_error("GenericDensity: density must be callable");
        if (!(support_cut > 0.0))
            throw std::domain_error("GenericDensity: support_cut must be positive");
        const QuadratureResult check = integrate_positive_axis(
            [this](double x) { return std::min(x, 1.0) * density(x); }, support_cut, 1e-8, 1e-8);
        if (!check.converged || !(check.abs_error < 1e-6)) {
            throw std::domain_error(
                "GenericDensity: integral of min(x,1) against the density did not converge; "
                "not an admissible Levy measure");
        }
    }
};

using LevyMeasureSpec = std::variant<GammaFamily, StableFamily, FiniteAtomic, GenericDensity>;

inline bool has_density(const LevyMeasureSpec& spec) {
    return !std::holds_alternative<FiniteAtomic>(spec);
}

/// Pointwise density for the non-atomic families.
inline double measure_density(const LevyMeasureSpec& spec, double x) {
    if (!(x > 0.0)) throw std::domain_error("measure_density: x must be positive");
    if (const auto* g = std::get_if<GammaFamily>(&spec)) return g->a * std::exp(-g->b * x) / x;
    if (const auto* s = std::get_if<StableFamily>(&spec)) {
        return s->c * s->index / std::tgamma(1.0 - s->index) * std::pow(x, -1.0 - s->index);
    }
    if (const auto* d = std::get_if<GenericDensity>(&spec)) return d->density(x);
    throw std::domain_error("measure_density: atomic measure has no density");
}

inline double quadrature_cut(const LevyMeasureSpec& spec) {
    if (const auto* d = std::get_if<GenericDensity>(&spec)) return d->support_cut;
    return 1.0;
}

inline std::string family_name(const LevyMeasureSpec& spec) {
    if (std::holds_alternative<GammaFamily>(spec)) return "gamma";
    if (std::holds_alternative<StableFamily>(spec)) return "stable";
    if (std::holds_alternative<FiniteAtomic>(spec)) return "atomic";
    return "generic";
}

}  // namespace levysub
