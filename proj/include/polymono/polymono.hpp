#pragma once

#include "polymono/analysis.hpp"
#include "polymono/decomposition.hpp"
#include "polymono/gram.hpp"
#include "polymono/linalg.hpp"
#include "polymono/nelder_mead.hpp"
#include "polymono/polynomial.hpp"
#include "polymono/psd_split.hpp"
#include "polymono/reach.hpp"
