#pragma once

// Umbrella header for the legotag part-of-speech tagging library.

#include "legotag/baseline.hpp"
#include "legotag/clustering.hpp"
#include "legotag/corpus.hpp"
#include "legotag/cpt.hpp"
#include "legotag/error.hpp"
#include "legotag/eval.hpp"
#include "legotag/features.hpp"
#include "legotag/inference.hpp"
#include "legotag/model.hpp"
#include "legotag/model_io.hpp"
#include "legotag/parallel.hpp"
#include "legotag/text.hpp"
#include "legotag/vocab.hpp"
