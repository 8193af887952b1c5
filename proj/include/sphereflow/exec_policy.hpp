#pragma once

namespace sphereflow {

/// Selects the serial reference or the OpenMP kernel for the O(n^2) pair scans.
/// Both produce bit-identical results.
enum class ExecPolicy { serial, parallel };

}  // namespace sphereflow
