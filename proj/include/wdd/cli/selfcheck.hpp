#pragma once

#include <cstdint>
#include <ostream>

#include "wdd/identities.hpp"

namespace wdd::cli {

/// Runs the identity suites, prints one line per suite (or JSON), returns 0 iff all pass.
int selfcheck(std::ostream& out, std::uint64_t seed, bool json, const identities::Faults& faults);

}  // namespace wdd::cli
