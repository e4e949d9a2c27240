#ifndef LIECR_LIECR_HPP
#define LIECR_LIECR_HPP

#include "liecr/errors.hpp"
#include "liecr/tolerance.hpp"
#include "liecr/exact.hpp"
#include "liecr/report.hpp"
#include "liecr/lie_algebra.hpp"
#include "liecr/builtins.hpp"
#include "liecr/linalg.hpp"
#include "liecr/subspace.hpp"
#include "liecr/roots.hpp"
#include "liecr/transversality.hpp"
#include "liecr/structures.hpp"
#include "liecr/su2_geometry.hpp"
#include "liecr/json_io.hpp"
#include "liecr/pipeline.hpp"

#endif  // LIECR_LIECR_HPP
