#pragma once

#include "mfu/ars.hpp"
#include "mfu/chain.hpp"
#include "mfu/control.hpp"
#include "mfu/csv_io.hpp"
#include "mfu/density.hpp"
#include "mfu/diagnostics.hpp"
#include "mfu/error.hpp"
#include "mfu/gibbs.hpp"
#include "mfu/models.hpp"
#include "mfu/rng.hpp"
#include "mfu/slice.hpp"
