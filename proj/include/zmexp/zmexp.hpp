#pragma once
// Umbrella header.

#include "map.hpp"
#include "curves.hpp"
#include "regions.hpp"
#include "dynamics.hpp"
#include "parameter.hpp"
#include "render.hpp"
#include "image.hpp"
#include "serialize.hpp"
#include "verify.hpp"
#include "cli.hpp"
