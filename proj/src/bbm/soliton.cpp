#include "avint/bbm/soliton.hpp"

#include <cmath>

#include "avint/core/errors.hpp"

namespace avint::bbm {

namespace {

const double kSqrt5 = std::sqrt(5.0);
const double kRate = (kSqrt5 - 1.0) / 4.0;

constexpr int kPeakSamplesPerCell = 100;
constexpr double kMinPeak = 0.1;

}  // namespace

double soliton_amplitude() { return (3.0 * kSqrt5 - 3.0) / 2.0; }

double soliton_profile(double x) {
  const double sech = 1.0 / std::cosh(kRate * x);
  return soliton_amplitude() * sech * sech;
}

double soliton_profile_dx(double x) {
  const double sech = 1.0 / std::cosh(kRate * x);
  return -2.0 * kRate * soliton_amplitude() * sech * sech * std::tanh(kRate * x);
}

Vector soliton_ic(const PeriodicHermiteSpace& space) {
  return space.interpolate(soliton_profile, soliton_profile_dx);
}

Vector soliton_ic_projected(const PeriodicHermiteSpace& space) {
  // The cell rule is not exact for sech², so each cell is split into sub-cells for the load.
  constexpr int kSubcells = 20;
  const QuadratureRule& rule = space.cell_rule();
  const double h = space.cell_width();
  Vector load = Vector::Zero(space.dofs());
  for (int e = 0; e < space.cells(); ++e) {
    const std::array<int, 4> dofs = space.cell_dofs(e);
    for (int sub = 0; sub < kSubcells; ++sub) {
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const double xi = (sub + rule.nodes()[q]) / kSubcells;
        const double w = h * rule.weights()[q] / kSubcells;
        const double x = space.left() + (e + xi) * h;
        const std::array<double, 4> n = space.shape(xi);
        const std::array<double, 4> nx = space.shape_dx(xi);
        for (int a = 0; a < 4; ++a) {
          load[dofs[a]] += w * (soliton_profile(x) * n[a] + soliton_profile_dx(x) * nx[a]);
        }
      }
    }
  }
  return assemble_h1_gram(space).ldlt().solve(load);
}

double peak_position(const PeriodicHermiteSpace& space, const Vector& u) {
  const int n = space.cells() * kPeakSamplesPerCell;
  const double dx = space.length() / n;
  std::vector<double> values(n);
  int best = 0;
  for (int k = 0; k < n; ++k) {
    values[k] = space.evaluate(u, space.left() + k * dx);
    if (values[k] > values[best]) {
      best = k;
    }
  }
  if (values[best] < kMinPeak) {
    throw DomainError("no soliton: peak amplitude below 0.1");
  }
  const double fm = values[(best + n - 1) % n];
  const double f0 = values[best];
  const double fp = values[(best + 1) % n];
  const double curvature = fm - 2.0 * f0 + fp;
  double offset = 0.0;
  if (curvature < 0.0) {
    offset = 0.5 * (fm - fp) / curvature;
  }
  return space.left() + (best + offset) * dx;
}

std::vector<double> unwrap_positions(const std::vector<double>& positions, double period) {
  std::vector<double> out(positions.size());
  double shift = 0.0;
  for (std::size_t k = 0; k < positions.size(); ++k) {
    if (k > 0) {
      const double jump = positions[k] - positions[k - 1];
      if (jump < -0.5 * period) {
        shift += period;
      } else if (jump > 0.5 * period) {
        shift -= period;
      }
    }
    out[k] = positions[k] + shift;
  }
  return out;
}

double soliton_speed(const std::vector<double>& times, const std::vector<double>& positions,
                     double period, double t_begin, double t_end) {
  if (times.size() != positions.size()) {
    throw ParameterError("soliton speed: times and positions differ in length");
  }
  const std::vector<double> unwrapped = unwrap_positions(positions, period);
  double st = 0.0;
  double sx = 0.0;
  int count = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] >= t_begin && times[k] <= t_end) {
      st += times[k];
      sx += unwrapped[k];
      ++count;
    }
  }
  if (count < 10) {
    throw ParameterError("soliton speed needs at least 10 snapshots in the window");
  }
  const double mt = st / count;
  const double mx = sx / count;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] >= t_begin && times[k] <= t_end) {
      num += (times[k] - mt) * (unwrapped[k] - mx);
      den += (times[k] - mt) * (times[k] - mt);
    }
  }
  return num / den;
}

std::vector<std::pair<double, double>> sample(const PeriodicHermiteSpace& space, const Vector& u,
                                              int per_cell) {
  if (per_cell < 1) {
    throw ParameterError("need at least one sample per cell");
  }
  const int n = space.cells() * per_cell;
  const double dx = space.length() / n;
  std::vector<std::pair<double, double>> out;
  out.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double x = space.left() + k * dx;
    out.emplace_back(x, space.evaluate(u, x));
  }
  return out;
}

}  // namespace avint::bbm
