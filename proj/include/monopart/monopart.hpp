#pragma once

#include "monopart/bitset.hpp"
#include "monopart/colored_graph.hpp"
#include "monopart/cylinder.hpp"
#include "monopart/cylinder_finder.hpp"
#include "monopart/embedding.hpp"
#include "monopart/equitable.hpp"
#include "monopart/errors.hpp"
#include "monopart/family.hpp"
#include "monopart/graph.hpp"
#include "monopart/io.hpp"
#include "monopart/oracle.hpp"
#include "monopart/params.hpp"
#include "monopart/pipeline.hpp"
#include "monopart/ramsey_cover.hpp"
#include "monopart/rational.hpp"
#include "monopart/regularity.hpp"
#include "monopart/rng.hpp"
#include "monopart/subgraph_search.hpp"
