#pragma once

#include "smlab/analysis.hpp"
#include "smlab/bounds.hpp"
#include "smlab/demand.hpp"
#include "smlab/engine.hpp"
#include "smlab/errors.hpp"
#include "smlab/io.hpp"
