#pragma once

#include "gb/bitcube.hpp"
#include "gb/cube.hpp"
#include "gb/errors.hpp"
#include "gb/exact.hpp"
#include "gb/io.hpp"
#include "gb/model.hpp"
#include "gb/oracle.hpp"
#include "gb/rect.hpp"
#include "gb/rng.hpp"
#include "gb/version.hpp"
