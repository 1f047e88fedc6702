#pragma once

#include "horolab/affine.hpp"
#include "horolab/arith.hpp"
#include "horolab/autofns.hpp"
#include "horolab/errors.hpp"
#include "horolab/expsum.hpp"
#include "horolab/majorant.hpp"
#include "horolab/orbitlab.hpp"
#include "horolab/sl2.hpp"
#include "horolab/version.hpp"
