#pragma once

#include <span>
#include <vector>

namespace swarmsyn {

/// Regularised incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// P(X <= f) for X ~ F(d1, d2).
double f_cdf(double f, double d1, double d2);

/// P(X > f) for X ~ F(d1, d2), computed without cancellation.
double f_survival(double f, double d1, double d2);

struct AnovaResult {
    double F = 0.0;
    int df_between = 0;
    int df_within = 0;
    double p_value = 1.0;
};

/// Classical one-way ANOVA. Needs >= 2 groups with >= 2 observations each,
/// otherwise throws std::invalid_argument.
AnovaResult anova_one_way(const std::vector<std::vector<double>>& groups);

double median(std::vector<double> values);

/// Sample standard deviation (n - 1); 0 for fewer than two values.
double stddev(std::span<const double> values);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace swarmsyn
