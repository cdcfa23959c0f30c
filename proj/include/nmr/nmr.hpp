#pragma once

#include "nmr/circumscription.hpp"
#include "nmr/default_engine.hpp"
#include "nmr/default_theory.hpp"
#include "nmr/dl_redundancy.hpp"
#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/io.hpp"
#include "nmr/logic.hpp"
#include "nmr/model_set.hpp"
#include "nmr/qbf.hpp"
#include "nmr/reductions.hpp"
#include "nmr/transforms.hpp"
#include "nmr/universe.hpp"
