#pragma once
// Umbrella header: pulls in the whole library.

#include "attack.hpp"   // IWYU pragma: export
#include "cost.hpp"     // IWYU pragma: export
#include "data.hpp"     // IWYU pragma: export
#include "errors.hpp"   // IWYU pragma: export
#include "eval.hpp"     // IWYU pragma: export
#include "losses.hpp"   // IWYU pragma: export
#include "matrix.hpp"   // IWYU pragma: export
#include "model.hpp"    // IWYU pragma: export
#include "rng.hpp"      // IWYU pragma: export
#include "trainer.hpp"  // IWYU pragma: export
