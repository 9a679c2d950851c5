#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "geodid/geometry.hpp"
#include "geodid/panel.hpp"

namespace geodid::testing {

using Rng = std::mt19937_64;

// Independent Phi^{-1}: bisection on the erfc-based CDF.
double bisection_normal_quantile(double p);

// N(mean, sd^2) quantiles on the midpoint grid, via the bisection oracle.
std::vector<double> gaussian_quantiles_oracle(double mean, double sd, std::size_t grid_size);

double sup_norm_interior(std::span<const double> a, std::span<const double> b, std::size_t trim);

double uniform(Rng& rng, double lo, double hi);
double normal(Rng& rng);

QuantileCurve random_curve(Rng& rng, std::size_t grid_size = 50);
UnitCompositionPoint random_orthant_point(Rng& rng, std::size_t dim = 3);
SymmetricMatrixPoint random_symmetric(Rng& rng, Eigen::Index m = 3);
SpacePoint random_point(Rng& rng, SpaceId space);

// Two-period panel with a random treated subset (both groups nonempty).
PanelDataset random_two_period_panel(Rng& rng, SpaceId space, std::size_t units);

// Staggered panel on periods 0..T with random groups in {1..T, never};
// every group in 1..T-1 and the never-treated cohort are populated.
PanelDataset random_staggered_panel(Rng& rng, SpaceId space, std::size_t units, int last_period);

// Largest entrywise difference between two points of one space.
double max_abs_diff(const SpacePoint& a, const SpacePoint& b);

// Empty scratch directory under the system temp dir, unique per call.
std::filesystem::path fresh_temp_dir(const std::string& tag);

void write_text(const std::filesystem::path& file, const std::string& text);
std::string read_text(const std::filesystem::path& file);

// Hand OLS for y = a + b x.
std::pair<double, double> hand_ols(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace geodid::testing
