#pragma once

// Character theory of the groups 1+A. Nothing here depends on the monomial
// decomposition code in gutkin.hpp.

#include "nilchar/character_table.hpp"
#include "nilchar/class_function.hpp"
#include "nilchar/linear_characters.hpp"
