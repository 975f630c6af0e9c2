#pragma once

#include "qcorr/eigen.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/nelder_mead.hpp"
#include "qcorr/rng.hpp"
#include "qcorr/states.hpp"
