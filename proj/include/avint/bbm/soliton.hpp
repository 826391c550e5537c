/**
 * @file soliton.hpp
 * @brief Soliton initial data and tracking of its peak.
 */
#pragma once

#include <utility>
#include <vector>

#include "avint/bbm/hermite_space.hpp"

namespace avint::bbm {

/// Amplitude (3√5 − 3)/2 of the sech² soliton, whose speed is (1 + √5)/2.
[[nodiscard]] double soliton_amplitude();
[[nodiscard]] double soliton_profile(double x);
[[nodiscard]] double soliton_profile_dx(double x);

/// Hermite interpolant of the soliton centred at 0.
[[nodiscard]] Vector soliton_ic(const PeriodicHermiteSpace& space);
/// H¹-orthogonal projection of the same soliton. Its I₂ is 15.9658 at M = 50 against 15.9486 for
/// the interpolant; the continuous value is 15.9659.
[[nodiscard]] Vector soliton_ic_projected(const PeriodicHermiteSpace& space);

/// Peak location at resolution h/100 refined by a parabola through the neighbouring samples.
/// Throws DomainError when max u < 0.1.
[[nodiscard]] double peak_position(const PeriodicHermiteSpace& space, const Vector& u);

/// Shifts each position by multiples of the period so consecutive jumps are below half a period.
[[nodiscard]] std::vector<double> unwrap_positions(const std::vector<double>& positions,
                                                   double period);

/// Least-squares slope of position against time over records with t ∈ [t_begin, t_end].
/// Needs at least 10 records in the window.
[[nodiscard]] double soliton_speed(const std::vector<double>& times,
                                   const std::vector<double>& positions, double period,
                                   double t_begin, double t_end);

/// (x, u(x)) at `per_cell` equispaced points per cell plus the right endpoint.
[[nodiscard]] std::vector<std::pair<double, double>> sample(const PeriodicHermiteSpace& space,
                                                            const Vector& u, int per_cell = 8);

}  // namespace avint::bbm
