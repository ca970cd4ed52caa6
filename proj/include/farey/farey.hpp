#pragma once

#include "farey/circle_map.hpp"
#include "farey/continued_fraction.hpp"
#include "farey/error.hpp"
#include "farey/euclid_spectrum.hpp"
#include "farey/farey_statistics.hpp"
#include "farey/fb_spectrum.hpp"
#include "farey/fraction.hpp"
#include "farey/hyperbolic_words.hpp"
#include "farey/partition.hpp"
#include "farey/roots.hpp"
#include "farey/word.hpp"
