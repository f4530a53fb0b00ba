#include "credal/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace credal {

Dist::Dist(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.size() < 2) {
        throw ValidationError("Dist requires dim >= 2, got " + std::to_string(weights_.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        const double w = weights_[i];
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw ValidationError("Dist weight [" + std::to_string(i) + "] = " +
                                  std::to_string(w) + " is not a nonnegative finite value");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        throw ValidationError("Dist weights sum to " + std::to_string(sum) +
                              ", deviating by more than " + std::to_string(kSumTolerance) +
                              " from 1");
    }
    for (double& w : weights_) w /= sum;
}

PositiveDist::PositiveDist(std::vector<double> weights, double floor)
    : Dist(std::move(weights)), floor_(floor) {
    if (!(floor_ > 0.0)) {
        throw PositivityError("PositiveDist floor must be > 0, got " + std::to_string(floor_));
    }
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] < floor_) {
            throw PositivityError("PositiveDist weight [" + std::to_string(i) + "] = " +
                                  std::to_string(weights_[i]) + " is below floor " +
                                  std::to_string(floor_));
        }
    }
}

PositiveDist::PositiveDist(Dist base, double floor, AlreadyNormalized)
    : Dist(std::move(base)), floor_(floor) {}

PositiveDist PositiveDist::with_tight_floor(std::vector<double> weights) {
    Dist d(std::move(weights));  // validate + renormalize first, then bound
    const double mn = *std::min_element(d.weights().begin(), d.weights().end());
    if (!(mn > 0.0)) {
        throw PositivityError("cannot take a positive floor: minimum weight is " +
                              std::to_string(mn));
    }
    return PositiveDist(std::move(d), mn, AlreadyNormalized{});
}

Likelihood::Likelihood(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw ValidationError("Likelihood requires at least one value");
    }
    alpha_ = std::numeric_limits<double>::infinity();
    beta_ = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw PositivityError("Likelihood value [" + std::to_string(i) + "] = " +
                                  std::to_string(v) + " is not strictly positive and finite");
        }
        alpha_ = std::min(alpha_, v);
        beta_ = std::max(beta_, v);
    }
}

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

double tv_distance(const Dist& p, const Dist& q) {
    require_same_dim(p.dim(), q.dim(), "tv_distance");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) acc += std::abs(p[i] - q[i]);
    return 0.5 * acc;
}

double hilbert_distance(const PositiveDist& p, const PositiveDist& q) {
    require_same_dim(p.dim(), q.dim(), "hilbert_distance");
    double max_ratio = 0.0;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (!(p[i] > 0.0) || !(q[i] > 0.0)) {
            throw PositivityError("hilbert_distance requires strictly positive entries");
        }
        const double r = p[i] / q[i];
        max_ratio = std::max(max_ratio, r);
        min_ratio = std::min(min_ratio, r);
    }
    return std::log(max_ratio) - std::log(min_ratio);
}

PositiveDist bayes_tilt(const PositiveDist& p, const Likelihood& ell) {
    require_same_dim(p.dim(), ell.dim(), "bayes_tilt");
    std::vector<double> out(p.dim());
    double norm = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        out[i] = ell[i] * p[i];
        norm += out[i];
    }
    for (double& w : out) w /= norm;
    Dist d(std::move(out));
    const double min_w = *std::min_element(d.weights().begin(), d.weights().end());
    // ell_i * p_i / sum_j ell_j p_j >= alpha * p_i / beta; the actual minimum
    // can undershoot that bound by rounding, so the recorded floor takes the
    // smaller of the two.
    const double induced_floor = std::min(ell.alpha() * p.floor() / ell.beta(), min_w);
    return PositiveDist(std::move(d), induced_floor, PositiveDist::AlreadyNormalized{});
}

double support_value(const Dist& p, const std::vector<double>& direction) {
    require_same_dim(p.dim(), direction.size(), "support_value");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i) acc += direction[i] * p[i];
    return acc;
}

}  // namespace credal
