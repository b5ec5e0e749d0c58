#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace levysub {

namespace detail {

// Lower regularized incomplete gamma by power series; valid for x < a+1.
inline double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 2000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by Lentz continued fraction; x > a+1.
inline double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 2000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

/// Lower regularized incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
inline double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::domain_error("regularized_gamma_p: need a > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_contfrac(a, x);
}

/// Upper regularized incomplete gamma Q(a,x) = 1 - P(a,x).
inline double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::domain_error("regularized_gamma_q: need a > 0 and x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_contfrac(a, x);
}

/// Upper-tail probability of the chi-square distribution.
inline double chi_square_pvalue(double statistic, int dof) {
    if (dof < 1) throw std::domain_error("chi_square_pvalue: dof must be >= 1");
    if (!(statistic >= 0.0)) throw std::domain_error("chi_square_pvalue: statistic must be >= 0");
    return regularized_gamma_q(0.5 * dof, 0.5 * statistic);
}

/// Streaming mean/variance accumulator; merges associatively so partial
/// sums computed per stream can be combined in any fixed order.
class MeanAccumulator {
public:
    void add(double x) {
        ++n_;
        sum_ += x;
        sumsq_ += x * x;
    }
    void merge(const MeanAccumulator& other) {
        n_ += other.n_;
        sum_ += other.sum_;
        sumsq_ += other.sumsq_;
    }
    std::uint64_t count() const { return n_; }
    double mean() const { return n_ ? sum_ / static_cast<double>(n_) : 0.0; }
    double variance() const {
        if (n_ < 2) return 0.0;
        const double m = mean();
        const double v = (sumsq_ - static_cast<double>(n_) * m * m) / static_cast<double>(n_ - 1);
        return std::max(v, 0.0);
    }
    double std_error() const {
        return n_ ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    }

private:
    std::uint64_t n_ = 0;
    double sum_ = 0.0;
    double sumsq_ = 0.0;
};

struct ChiSquareOutcome {
    double statistic = 0.0;
    int dof = 0;
    double pvalue = 1.0;
    std::size_t pooled_bins = 0;
};

class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pearson chi-square against the given cell probabilities, pooling
/// adjacent cells left to right until each pooled cell has expected count
/// >= min_expected. Throws InsufficientDataError if fewer than two pooled
/// cells survive.
inline ChiSquareOutcome pooled_chi_square(const std::vector<std::uint64_t>& observed,
                                          const std::vector<double>& cell_probs,
                                          double min_expected = 5.0) {
    if (observed.size() != cell_probs.size())
        throw std::invalid_argument("pooled_chi_square: size mismatch");
    std::uint64_t n = 0;
    for (const std::uint64_t o : observed) n += o;

    std::vector<double> exp_pooled;
    std::vector<double> obs_pooled;
    double exp_run = 0.0;
    double obs_run = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        exp_run += cell_probs[i] * static_cast<double>(n);
        obs_run += static_cast<double>(observed[i]);
        if (exp_run >= min_expected) {
            exp_pooled.push_back(exp_run);
            obs_pooled.push_back(obs_run);
            exp_run = 0.0;
            obs_run = 0.0;
        }
    }
    if (exp_run > 0.0 || obs_run > 0.0) {
        if (!exp_pooled.empty() && exp_run < min_expected) {
            exp_pooled.back() += exp_run;
            obs_pooled.back() += obs_run;
        } else if (exp_run > 0.0) {
            exp_pooled.push_back(exp_run);
            obs_pooled.push_back(obs_run);
        } else if (!exp_pooled.empty()) {
            obs_pooled.back() += obs_run;
        }
    }
    if (exp_pooled.size() < 2)
        throw InsufficientDataError("pooled_chi_square: fewer than two populated cells");

    ChiSquareOutcome out;
    out.pooled_bins = exp_pooled.size();
    for (std::size_t i = 0; i < exp_pooled.size(); ++i) {
        const double d = obs_pooled[i] - exp_pooled[i];
        out.statistic += d * d / exp_pooled[i];
    }
    out.dof = static_cast<int>(exp_pooled.size()) - 1;
    out.pvalue = chi_square_pvalue(out.statistic, out.dof);
    return out;
}

/// Two-sample Mann-Whitney rank-sum z statistic (normal approximation,
/// continuous data assumed so ties are not corrected).
inline double rank_sum_z(std::vector<double> a, std::vector<double> b) {
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();
    if (n1 < 8 || n2 < 8) throw InsufficientDataError("rank_sum_z: samples too small");
    std::vector<std::pair<double, int>> all;
    all.reserve(n1 + n2);
    for (const double x : a) all.emplace_back(x, 0);
    for (const double x : b) all.emplace_back(x, 1);
    std::sort(all.begin(), all.end());
    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].second == 0) rank_sum_a += static_cast<double>(i + 1);
    }
    const double dn1 = static_cast<double>(n1);
    const double dn2 = static_cast<double>(n2);
    const double u = rank_sum_a - dn1 * (dn1 + 1.0) / 2.0;
    const double mean_u = dn1 * dn2 / 2.0;
    const double sd_u = std::sqrt(dn1 * dn2 * (dn1 + dn2 + 1.0) / 12.0);
    return (u - mean_u) / sd_u;
}

}  // namespace levysub
