#pragma once

// Everything in one include.

#include "tafd/characters.hpp"
#include "tafd/curve.hpp"
#include "tafd/forms.hpp"
#include "tafd/hilbert.hpp"
#include "tafd/hyperbolic.hpp"
#include "tafd/quaternion.hpp"
#include "tafd/specseq.hpp"
