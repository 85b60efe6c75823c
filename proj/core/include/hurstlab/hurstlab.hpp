#pragma once

#include "hurstlab/corpus_stats.hpp"
#include "hurstlab/dfa.hpp"
#include "hurstlab/emd.hpp"
#include "hurstlab/error.hpp"
#include "hurstlab/persist.hpp"
#include "hurstlab/screening.hpp"
#include "hurstlab/signal_io.hpp"
#include "hurstlab/synth.hpp"
#include "hurstlab/version.hpp"
