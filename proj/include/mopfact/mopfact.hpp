#pragma once

#include "mopfact/alpha.hpp"
#include "mopfact/bcf.hpp"
#include "mopfact/closed_forms.hpp"
#include "mopfact/errors.hpp"
#include "mopfact/gauss_borel.hpp"
#include "mopfact/hessenberg.hpp"
#include "mopfact/matrix.hpp"
#include "mopfact/moments.hpp"
#include "mopfact/scalar.hpp"
#include "mopfact/series.hpp"
