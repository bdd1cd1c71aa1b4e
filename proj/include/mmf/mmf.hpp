#pragma once

#include "mmf/arith.hpp"
#include "mmf/chars.hpp"
#include "mmf/classify.hpp"
#include "mmf/coeff.hpp"
#include "mmf/error.hpp"
#include "mmf/galois.hpp"
#include "mmf/io.hpp"
#include "mmf/laurent.hpp"
#include "mmf/meta.hpp"
#include "mmf/metagroup.hpp"
#include "mmf/phigamma.hpp"
#include "mmf/rational.hpp"
#include "mmf/sampling.hpp"
#include "mmf/selftest.hpp"
