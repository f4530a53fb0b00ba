#pragma once

#include <cstddef>
#include <vector>

#include "credal/errors.hpp"

namespace credal {

class Likelihood;
class PositiveDist;
PositiveDist bayes_tilt(const PositiveDist& p, const Likelihood& ell);

/// Probability vector over a finite outcome space. Weights are validated
/// (nonnegative, sum within 1e-6 of one) and renormalized on construction,
/// so two Dists are equal as distributions iff they are equal elementwise.
class Dist {
public:
    explicit Dist(std::vector<double> weights);

    std::size_t dim() const { return weights_.size(); }
    const std::vector<double>& weights() const { return weights_; }
    double operator[](std::size_t i) const { return weights_[i]; }

    bool operator==(const Dist& other) const { return weights_ == other.weights_; }

    /// Sum tolerance accepted before renormalization kicks in.
    static constexpr double kSumTolerance = 1e-6;

protected:
    std::vector<double> weights_;
};

/// Distribution with all entries bounded below by a recorded positive floor.
class PositiveDist : public Dist {
public:
    PositiveDist(std::vector<double> weights, double floor);

    /// Floor defaults to 1e-9 when the data carries no explicit bound.
    explicit PositiveDist(std::vector<double> weights)
        : PositiveDist(std::move(weights), kDefaultFloor) {}

    /// Records the tightest valid floor (the minimum weight).
    static PositiveDist with_tight_floor(std::vector<double> weights);

    double floor() const { return floor_; }

    static constexpr double kDefaultFloor = 1e-9;

private:
    friend PositiveDist bayes_tilt(const PositiveDist& p, const Likelihood& ell);
    struct AlreadyNormalized {};
    /// Skips renormalization; the caller vouches that base is normalized and
    /// every weight is >= floor.
    PositiveDist(Dist base, double floor, AlreadyNormalized);

    double floor_;
};

/// Evidence-weight vector over the parameter space. Strictly positive;
/// alpha/beta are recomputed as the tight min/max of the values.
class Likelihood {
public:
    explicit Likelihood(std::vector<double> values);

    std::size_t dim() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

private:
    std::vector<double> values_;
    double alpha_;
    double beta_;
};

/// Total variation distance, 1/2 * l1 norm of the difference.
double tv_distance(const Dist& p, const Dist& q);

/// Hilbert projective distance log(max_i p_i/q_i) - log(min_i p_i/q_i).
double hilbert_distance(const PositiveDist& p, const PositiveDist& q);

/// Bayes update of p by the evidence weights ell, renormalized.
/// The output floor is the induced bound alpha * p.floor() / beta.
PositiveDist bayes_tilt(const PositiveDist& p, const Likelihood& ell);

/// Inner product of a distribution with a direction vector.
double support_value(const Dist& p, const std::vector<double>& direction);

}  // namespace credal
