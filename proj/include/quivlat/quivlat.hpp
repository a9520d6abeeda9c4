#pragma once

#include "quivlat/error.hpp"
#include "quivlat/ring.hpp"
#include "quivlat/matrix.hpp"
#include "quivlat/ring_hom.hpp"
#include "quivlat/normal_form.hpp"
#include "quivlat/quiver.hpp"
#include "quivlat/homology.hpp"
#include "quivlat/isomorphism.hpp"
#include "quivlat/mutation.hpp"
#include "quivlat/structure.hpp"
