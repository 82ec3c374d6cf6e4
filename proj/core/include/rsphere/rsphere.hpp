#pragma once

#include "rsphere/error.hpp"
#include "rsphere/hopf.hpp"
#include "rsphere/matfun.hpp"
#include "rsphere/opgraph.hpp"
#include "rsphere/projection.hpp"
#include "rsphere/sampling.hpp"
#include "rsphere/spectral_lab.hpp"
#include "rsphere/sphere.hpp"
