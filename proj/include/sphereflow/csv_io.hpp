#pragma once

// Plain CSV for curves, chord-arc profiles and diagnostics: '.' decimal separator, LF line
// endings, doubles in shortest round-trip form so write -> read -> write is byte-identical.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sphereflow/chord_arc.hpp"
#include "sphereflow/flow_engine.hpp"
#include "sphereflow/sphere_geometry.hpp"

namespace sphereflow {

std::string format_double(double v);

/// Header "x,y,z". Errors: IO.
void write_curve_csv(const std::filesystem::path& path, const DiscreteCurve& curve);
void write_curve_csv(std::ostream& os, const DiscreteCurve& curve);
std::vector<Vec3> read_curve_points(const std::filesystem::path& path);
/// read_curve_points followed by make_curve.
DiscreteCurve read_curve_csv(const std::filesystem::path& path);

/// Header "z,psi,i,j": one row per nonempty bin, z the normalized arc of the minimizing pair.
void write_profile_csv(const std::filesystem::path& path, const ChordArcProfile& prof);

/// Header "step,t,tau,L,max_abs_kappa,min_Z,dLdt_obs,curv_margin"; NaN written as "nan".
void write_diagnostics_csv(const std::filesystem::path& path, const DiagnosticsSeries& series);
DiagnosticsSeries read_diagnostics_csv(const std::filesystem::path& path);

}  // namespace sphereflow
