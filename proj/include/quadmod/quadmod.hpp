#pragma once

#include "quadmod/error.hpp"
#include "quadmod/group.hpp"
#include "quadmod/hom.hpp"
#include "quadmod/subgroup.hpp"
#include "quadmod/abelian.hpp"
#include "quadmod/catalog.hpp"
#include "quadmod/tensor.hpp"
#include "quadmod/nil2.hpp"
#include "quadmod/quadratic.hpp"
#include "quadmod/pullback.hpp"
#include "quadmod/presentation.hpp"
#include "quadmod/free_product.hpp"
#include "quadmod/induced.hpp"
#include "quadmod/bundle.hpp"
#include "quadmod/commands.hpp"
