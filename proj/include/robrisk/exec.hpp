#pragma once

namespace robrisk {

/// Selects the OpenMP kernel or the serial reference kernel. Both produce
/// bit-identical results; the serial path exists for testing and benchmarking.
enum class Exec { serial, parallel };

}  // namespace robrisk
