#pragma once

#include "sodcheck/chow.hpp"
#include "sodcheck/cohomology.hpp"
#include "sodcheck/error.hpp"
#include "sodcheck/ktheory.hpp"
#include "sodcheck/linalg.hpp"
#include "sodcheck/rational.hpp"
#include "sodcheck/report.hpp"
#include "sodcheck/scene.hpp"
#include "sodcheck/sod.hpp"
