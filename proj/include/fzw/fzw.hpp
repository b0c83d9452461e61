#pragma once

#include "fzw/core/errors.hpp"
#include "fzw/core/params.hpp"
#include "fzw/core/grid.hpp"
#include "fzw/core/field.hpp"
#include "fzw/core/fft.hpp"
#include "fzw/core/io.hpp"
#include "fzw/core/smooth.hpp"

#include "fzw/multipliers/multiplier.hpp"
#include "fzw/multipliers/fractional.hpp"
#include "fzw/multipliers/mikhlin.hpp"

#include "fzw/spacefrac/fundamental.hpp"
#include "fzw/spacefrac/solver.hpp"
#include "fzw/spacefrac/hardy.hpp"

#include "fzw/symbolcalc/cutoff.hpp"
#include "fzw/symbolcalc/symbols.hpp"
#include "fzw/symbolcalc/symbol_class.hpp"
#include "fzw/symbolcalc/characteristic.hpp"
#include "fzw/symbolcalc/flow.hpp"

#include "fzw/timefrac/solver.hpp"
#include "fzw/timefrac/front.hpp"

#include "fzw/microlocal/wavefront.hpp"
