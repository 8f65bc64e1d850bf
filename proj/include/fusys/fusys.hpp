#pragma once

#include "fusys/biset.hpp"
#include "fusys/builtin.hpp"
#include "fusys/burnside.hpp"
#include "fusys/catalog.hpp"
#include "fusys/charidem.hpp"
#include "fusys/fusion.hpp"
#include "fusys/group.hpp"
#include "fusys/lattice.hpp"
#include "fusys/linalg.hpp"
#include "fusys/mackey.hpp"
#include "fusys/rational.hpp"
#include "fusys/scenario.hpp"
#include "fusys/serialize.hpp"
