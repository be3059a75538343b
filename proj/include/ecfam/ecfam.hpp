#pragma once

#include "ecfam/errors.hpp"
#include "ecfam/integer.hpp"
#include "ecfam/number_theory.hpp"
#include "ecfam/polynomial.hpp"
#include "ecfam/curve.hpp"
#include "ecfam/family.hpp"
#include "ecfam/finite_field.hpp"
#include "ecfam/torsion.hpp"
#include "ecfam/descent.hpp"
#include "ecfam/record.hpp"
#include "ecfam/sweep.hpp"
#include "ecfam/commands.hpp"
