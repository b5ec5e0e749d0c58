#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace levysub {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;     // running error estimate
    std::size_t evaluations = 0;
    bool converged = true;
};

/// Raised by callers that cannot tolerate an unconverged integral; carries
/// the residual error estimate of the failed computation.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual estimate " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

namespace detail {

// 15-point Kronrod nodes on [0,1] side of the symmetric rule; the embedded
// 7-point Gauss rule sits on the odd-indexed nodes plus the centre.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr double kGk15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr double kGk15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

/// Gauss-Kronrod 15(7) on [a,b] with the QUADPACK error estimate.
template <class F>
Segment gk15(F&& f, double a, double b) {
    const double half = 0.5 * (b - a);
    const double center = 0.5 * (a + b);
    const double fc = f(center);

    double fv1[7], fv2[7];
    double resg = fc * kGk15WeightsG[3];
    double resk = fc * kGk15WeightsK[7];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kGk15Nodes[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kGk15WeightsG[j / 2] * fsum;
        resk += kGk15WeightsK[j] * fsum;
        resabs += kGk15WeightsK[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }
    const double reskh = resk * 0.5;
    double resasc = kGk15WeightsK[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kGk15WeightsK[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);

    return Segment{a, b, resk * half, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over the finite
/// interval [a,b]; the worst segment is bisected until the summed error
/// estimate meets max(abs_tol, rel_tol*|value|) or the segment budget runs
/// out (converged=false in that case).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-10,
                                    double rel_tol = 1e-8, std::size_t max_segments = 512) {
    QuadratureResult out;
    if (a == b) return out;

    std::priority_queue<detail::Segment> queue;
    detail::Segment whole = detail::gk15(f, a, b);
    out.evaluations = 15;
    double total = whole.value;
    double total_err = whole.error;
    queue.push(whole);

    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
           queue.size() < max_segments) {
        const detail::Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval at machine resolution
            queue.push(detail::Segment{worst.a, worst.b, worst.value, 0.0});
            total_err -= worst.error;
            continue;
        }
        const detail::Segment left = detail::gk15(f, worst.a, mid);
        const detail::Segment right = detail::gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    out.value = total;
    out.abs_error = total_err;
    out.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total)) + 1e-300;
    return out;
}

/// Integral of g over (0, infinity) for integrands with an integrable
/// singularity at 0, as they arise from Levy measures.
///
/// The domain is split at `cut`. Below the cut the substitution x = e^y
/// turns the singularity into an exponentially decaying tail which is
/// swept in blocks of fixed log-width; above the cut, dyadic blocks
/// [cut*2^k, cut*2^{k+1}] are accumulated. Each march stops once two
/// consecutive blocks fall below the tolerance share; a march that never
/// decays (a divergent or non-integrable g) yields converged=false.
template <class G>
QuadratureResult integrate_positive_axis(G&& g, double cut = 1.0, double abs_tol = 1e-10,
                                         double rel_tol = 1e-8) {
    if (!(cut > 0.0)) throw std::domain_error("integrate_positive_axis: cut must be positive");
    QuadratureResult out;
    const double block_tol_abs = abs_tol / 16.0;
    const double block_tol_rel = rel_tol / 4.0;

    auto accumulate = [&](const QuadratureResult& block) {
        out.value += block.value;
        out.abs_error += block.abs_error;
        out.evaluations += block.evaluations;
        out.converged = out.converged && block.converged;
    };

    // (0, cut]: x = e^y, dy-blocks marching toward -infinity. The march
    // floor keeps e^y comfortably inside normal double range.
    {
        const double width = 4.0;
        const double y_top = std::log(cut);
        const int max_blocks = 160;
        double prev = std::numeric_limits<double>::infinity();
        bool decayed = false;
        for (int k = 0; k < max_blocks; ++k) {
            const double hi = y_top - k * width;
            const double lo = hi - width;
            if (lo < -660.0) break;
            const QuadratureResult block = integrate_adaptive(
                [&](double y) { return g(std::exp(y)) * std::exp(y); }, lo, hi, block_tol_abs,
                block_tol_rel);
            accumulate(block);
            const double mag = std::abs(block.value);
            const double waterline =
                std::max(block_tol_abs, block_tol_rel * std::abs(out.value));
            if (mag < waterline && prev < waterline && k >= 2) {
                decayed = true;
                break;
            }
            prev = mag;
        }
        if (!decayed) out.converged = false;
    }

    // [cut, infinity): dyadic blocks.
    {
        const int max_blocks = 90;
        double prev = std::numeric_limits<double>::infinity();
        bool decayed = false;
        for (int k = 0; k < max_blocks; ++k) {
            const double lo = cut * std::pow(2.0, k);
            const double hi = 2.0 * lo;
            if (!std::isfinite(hi)) break;
            const QuadratureResult block =
                integrate_adaptive(g, lo, hi, block_tol_abs, block_tol_rel);
            accumulate(block);
            const double mag = std::abs(block.value);
            const double waterline =
                std::max(block_tol_abs, block_tol_rel * std::abs(out.value));
            if (mag < waterline && prev < waterline && k >= 2) {
                decayed = true;
                break;
            }
            prev = mag;
        }
        if (!decayed) out.converged = false;
    }

    return out;
}

/// Same as integrate_positive_axis but throwing on non-convergence.
template <class G>
double integrate_positive_axis_or_throw(G&& g, double cut = 1.0, double abs_tol = 1e-10,
                                        double rel_tol = 1e-8) {
    const QuadratureResult r = integrate_positive_axis(g, cut, abs_tol, rel_tol);
    if (!r.converged)
        throw QuadratureError("quadrature over (0,inf) did not converge", r.abs_error);
    return r.value;
}

}  // namespace levysub
