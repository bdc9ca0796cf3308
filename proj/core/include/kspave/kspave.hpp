#pragma once

#include "kspave/certificate.hpp"
#include "kspave/error.hpp"
#include "kspave/frames.hpp"
#include "kspave/generators.hpp"
#include "kspave/harmonic.hpp"
#include "kspave/io.hpp"
#include "kspave/linalg.hpp"
#include "kspave/paving.hpp"
#include "kspave/search.hpp"
#include "kspave/sequences.hpp"
#include "kspave/subspaces.hpp"
