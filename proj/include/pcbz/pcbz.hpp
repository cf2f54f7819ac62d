#pragma once

#include "pcbz/bench.hpp"
#include "pcbz/block_codec.hpp"
#include "pcbz/container.hpp"
#include "pcbz/core.hpp"
#include "pcbz/criterion.hpp"
#include "pcbz/io.hpp"
#include "pcbz/parallel.hpp"
#include "pcbz/pipeline.hpp"
#include "pcbz/predictors.hpp"
#include "pcbz/report.hpp"
#include "pcbz/synth.hpp"
