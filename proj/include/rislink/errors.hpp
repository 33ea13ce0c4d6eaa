// rislink - link-level simulator for RIS-aided wireless systems
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace rislink {

/// Invalid configuration input (bad geometry, malformed codebook, unparsable
/// experiment file). Distinct from runtime failures so the CLI can map it to
/// its own exit code.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace rislink
