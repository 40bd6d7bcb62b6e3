#pragma once

#include "mick/basis_mic.hpp"
#include "mick/channels.hpp"
#include "mick/coords.hpp"
#include "mick/fd.hpp"
#include "mick/halfint.hpp"
#include "mick/inner_product.hpp"
#include "mick/interbasis.hpp"
#include "mick/ks_duality.hpp"
#include "mick/oscillator4d.hpp"
#include "mick/quadrature.hpp"
#include "mick/rng.hpp"
#include "mick/serialize.hpp"
#include "mick/specfun.hpp"
#include "mick/verify.hpp"
