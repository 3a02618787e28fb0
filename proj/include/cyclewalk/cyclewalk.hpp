#pragma once

// Discrete-time quantum walks on n-cycles with a one-parameter coin and a
// chirality-swapping shift: exact spectrum, exact limiting distribution,
// and symmetry analysis of the time-averaged dynamics.

#include "cyclewalk/chebyshev.hpp"
#include "cyclewalk/csv.hpp"
#include "cyclewalk/errors.hpp"
#include "cyclewalk/evolution.hpp"
#include "cyclewalk/limiting.hpp"
#include "cyclewalk/model.hpp"
#include "cyclewalk/spectral.hpp"
#include "cyclewalk/symmetry.hpp"
#include "cyclewalk/version.hpp"
