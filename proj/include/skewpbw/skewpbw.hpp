#pragma once

// Umbrella header.

#include "skewpbw/catalog.hpp"
#include "skewpbw/classify.hpp"
#include "skewpbw/errors.hpp"
#include "skewpbw/explain.hpp"
#include "skewpbw/exponent.hpp"
#include "skewpbw/morphisms.hpp"
#include "skewpbw/parallel.hpp"
#include "skewpbw/pbw.hpp"
#include "skewpbw/property_lab.hpp"
#include "skewpbw/report.hpp"
#include "skewpbw/ring.hpp"
#include "skewpbw/spec_file.hpp"
#include "skewpbw/theorem_suite.hpp"
