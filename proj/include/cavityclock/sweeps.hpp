#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavityclock/bogoliubov.hpp"
#include "cavityclock/metrology.hpp"
#include "cavityclock/table.hpp"

namespace cavityclock {

enum class TransformFlag { full, mode_mixing_only };

/// QFI of the transformed state over QFI of the initial state, using
/// building_block(h, theta_a); mode_mixing_only drops particle creation.
double qfi_ratio(const StateParams& initial, double h, double theta_a,
                 TransformFlag flag, int n_max = 10,
                 MapMethod method = MapMethod::quadrature);

/// [QFI(full) - QFI(stripped)] / QFI(initial), with the initial pointer phase
/// theta_0 installed before the transformation.
double creation_shift(const StateParams& initial, double h, double theta_a,
                      double theta_0, int n_max = 10,
                      MapMethod method = MapMethod::quadrature);

/// Squeezing r of mode 1 after the building block applied to the vacuum.
double vacuum_squeezing(double h, double theta_a, int n_max = 10,
                        MapMethod method = MapMethod::quadrature);

/// Threshold N* below which motion enhances the QFI of an initial coherent
/// state: smallest-bracketed root of ratio(N) = 1 in (1e-8, 1], bisection to
/// 1e-6. Empty when no crossing exists.
std::optional<double> low_n_enhancement(double h, double theta_a,
                                        int n_max = 10,
                                        MapMethod method =
                                            MapMethod::quadrature);

/// One sweep axis. Recognized names: h, theta_a, theta_0, n_photons, split,
/// phi_0. Rows are emitted in lexicographic order of the axes in this fixed
/// name order, regardless of the order axes were declared.
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;
    // Fixed values for axes that are not swept.
    double h = 0.1;
    double theta_a = M_PI;
    double theta_0 = 0.0;
    double n_photons = 1.0;
    double split = 1.0;  // alpha^2 / N
    double phi_0 = 0.0;
    double purity = 1.0;
    TransformFlag flag = TransformFlag::full;
    int n_max = 10;
    MapMethod method = MapMethod::quadrature;
};

/// Cartesian-product evaluation; one row per grid point. Columns: the six
/// grid variables, the transformed StateParams, its photon number, and the
/// QFI quantities (initial, full, stripped, ratio per flag, creation shift).
/// Ratio and shift are NaN where the initial QFI vanishes (vacuum seeds).
Table run_sweep(const SweepSpec& spec);

}  // namespace cavityclock
