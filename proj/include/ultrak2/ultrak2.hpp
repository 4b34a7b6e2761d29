// Everything at once.
#pragma once
#include "analytic_approx.hpp"
#include "drinfeld.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "homology.hpp"
#include "k2reg.hpp"
#include "parse.hpp"
#include "random.hpp"
#include "ratfunc.hpp"
#include "residue_symbols.hpp"
#include "suite.hpp"
#include "symbols.hpp"
#include "trees_measures.hpp"
#include "valued_field.hpp"
