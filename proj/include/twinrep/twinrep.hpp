#pragma once

#include "twinrep/scalar.hpp"
#include "twinrep/matrix.hpp"
#include "twinrep/linalg.hpp"
#include "twinrep/representation.hpp"
#include "twinrep/reduction.hpp"
#include "twinrep/chain.hpp"
#include "twinrep/polynomial.hpp"
#include "twinrep/irreducibility.hpp"
#include "twinrep/oracle.hpp"
#include "twinrep/serialize.hpp"
#include "twinrep/sweep.hpp"
