#pragma once

#include <stdexcept>
#include <string>

namespace twochan {

/// Invalid or inconsistent run configuration (bad key, bad range, unknown
/// preset). The CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A computation could not proceed (degenerate resonance width, invalid
/// grid handed to a solver). CLI exit code 3.
struct computation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure while emitting artifacts. CLI exit code 4.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace twochan
