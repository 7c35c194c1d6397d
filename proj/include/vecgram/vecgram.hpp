#pragma once

// Umbrella header for the vecgram library: a corpus-trained parser over
// sparse word-association vectors composed through observed pairs.

#include "vecgram/compose.hpp"
#include "vecgram/context.hpp"
#include "vecgram/corpus.hpp"
#include "vecgram/errors.hpp"
#include "vecgram/eval.hpp"
#include "vecgram/model.hpp"
#include "vecgram/model_io.hpp"
#include "vecgram/pair_table.hpp"
#include "vecgram/parse_tree.hpp"
#include "vecgram/parser.hpp"
#include "vecgram/pcfg.hpp"
#include "vecgram/sim_vector.hpp"
#include "vecgram/similarity.hpp"
#include "vecgram/vocab.hpp"
