#pragma once

#include "anglesum/scalar.hpp"
#include "anglesum/linalg.hpp"
#include "anglesum/vectors.hpp"
#include "anglesum/sampling.hpp"
#include "anglesum/polytope.hpp"
#include "anglesum/angles.hpp"
#include "anglesum/constructions.hpp"
#include "anglesum/expr.hpp"
#include "anglesum/relations.hpp"
#include "anglesum/spans.hpp"
#include "anglesum/voxel.hpp"
#include "anglesum/gluing.hpp"
#include "anglesum/fixtures.hpp"
#include "anglesum/cellcomplex.hpp"
#include "anglesum/curved.hpp"
#include "anglesum/io.hpp"
