#pragma once

// Umbrella header: cut-measure embeddings of wreath products with exact
// arithmetic, compression-modulus calculus, and equivariance checks.

#include "wreathcut/rational.hpp"
#include "wreathcut/group.hpp"
#include "wreathcut/wreath.hpp"
#include "wreathcut/cuts.hpp"
#include "wreathcut/lift.hpp"
#include "wreathcut/embed.hpp"
#include "wreathcut/moduli.hpp"
#include "wreathcut/equivariance.hpp"
#include "wreathcut/estimate.hpp"
#include "wreathcut/groupspec.hpp"
