#pragma once

#include "errors.hpp"
#include "scalar.hpp"
#include "triangle.hpp"
#include "operators.hpp"
#include "limits.hpp"
#include "bases_duals.hpp"
#include "matclass.hpp"
#include "compactness.hpp"
