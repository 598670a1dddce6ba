#pragma once

#include "tempsym/colored_encoding.hpp"
#include "tempsym/errors.hpp"
#include "tempsym/explorer.hpp"
#include "tempsym/generators.hpp"
#include "tempsym/lanes.hpp"
#include "tempsym/oracle.hpp"
#include "tempsym/perm_group.hpp"
#include "tempsym/permutation.hpp"
#include "tempsym/reach.hpp"
#include "tempsym/refinement.hpp"
#include "tempsym/rendezvous.hpp"
#include "tempsym/stats.hpp"
#include "tempsym/symmetry.hpp"
#include "tempsym/temporal_graph.hpp"
#include "tempsym/vertex_set.hpp"
#include "tempsym/walk.hpp"
#include "tempsym/walk_transform.hpp"
