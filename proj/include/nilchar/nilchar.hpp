#pragma once

#include "nilchar/catalog.hpp"
#include "nilchar/chars.hpp"
#include "nilchar/exactfield.hpp"
#include "nilchar/gutkin.hpp"
#include "nilchar/identities.hpp"
#include "nilchar/io.hpp"
#include "nilchar/polarization.hpp"
#include "nilchar/suites.hpp"
#include "nilchar/unit_group.hpp"
