#pragma once

#include "algebra.hpp"
#include "errors.hpp"
#include "implicit.hpp"
#include "integer.hpp"
#include "jet.hpp"
#include "oracle.hpp"
#include "parametric.hpp"
#include "partitions.hpp"
#include "render.hpp"
#include "table_io.hpp"
#include "verify.hpp"
