#pragma once

#include "rv32sim/bits.hpp"
#include "rv32sim/decode.hpp"
#include "rv32sim/encode.hpp"
#include "rv32sim/image.hpp"
#include "rv32sim/isa.hpp"
#include "rv32sim/machine_state.hpp"
#include "rv32sim/memory.hpp"
#include "rv32sim/semantics.hpp"
#include "rv32sim/step.hpp"
#include "rv32sim/trace.hpp"
