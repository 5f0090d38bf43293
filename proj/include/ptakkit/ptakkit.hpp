#pragma once

#include "ptakkit/element_set.hpp"
#include "ptakkit/family.hpp"
#include "ptakkit/family_spec.hpp"
#include "ptakkit/fictitious_play.hpp"
#include "ptakkit/game_value.hpp"
#include "ptakkit/graph.hpp"
#include "ptakkit/homogeneous.hpp"
#include "ptakkit/interval.hpp"
#include "ptakkit/io.hpp"
#include "ptakkit/norm.hpp"
#include "ptakkit/rational.hpp"
#include "ptakkit/rng.hpp"
#include "ptakkit/simplex.hpp"
