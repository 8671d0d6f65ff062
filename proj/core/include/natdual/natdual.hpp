#pragma once

#include "natdual/algebra.hpp"
#include "natdual/cases/boolean_power.hpp"
#include "natdual/cases/catalog.hpp"
#include "natdual/cases/lattice_l.hpp"
#include "natdual/cases/median_tree.hpp"
#include "natdual/cases/priestley.hpp"
#include "natdual/duality.hpp"
#include "natdual/error.hpp"
#include "natdual/extension.hpp"
#include "natdual/io.hpp"
#include "natdual/iso.hpp"
#include "natdual/structure.hpp"
