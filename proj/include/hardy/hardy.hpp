#pragma once

#include "hardy/errors.hpp"
#include "hardy/fft.hpp"
#include "hardy/signal.hpp"
#include "hardy/takenaka.hpp"
#include "hardy/feval.hpp"
#include "hardy/reduction.hpp"
#include "hardy/search.hpp"
#include "hardy/cgd.hpp"
#include "hardy/pipeline.hpp"
#include "hardy/io.hpp"
#include "hardy/benchmark.hpp"
