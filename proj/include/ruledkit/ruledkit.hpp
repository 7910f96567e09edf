#pragma once

#include "ruledkit/error.hpp"
#include "ruledkit/tolerances.hpp"
#include "ruledkit/vec3.hpp"
#include "ruledkit/taylor.hpp"
#include "ruledkit/dual.hpp"
#include "ruledkit/ruled_curve.hpp"
#include "ruledkit/arclength.hpp"
#include "ruledkit/frenet.hpp"
#include "ruledkit/canonical.hpp"
#include "ruledkit/singular.hpp"
#include "ruledkit/frontal.hpp"
#include "ruledkit/classification.hpp"
#include "ruledkit/reconstruction.hpp"
#include "ruledkit/spec_format.hpp"
#include "ruledkit/report.hpp"
#include "ruledkit/mesh.hpp"
