#ifndef SKOLEM_SKOLEM_HPP
#define SKOLEM_SKOLEM_HPP

// Umbrella header.

#include "skolem/errors.hpp"
#include "skolem/frontend.hpp"
#include "skolem/json_io.hpp"
#include "skolem/matching.hpp"
#include "skolem/membership.hpp"
#include "skolem/oracle.hpp"
#include "skolem/presburger.hpp"
#include "skolem/semilinear.hpp"
#include "skolem/skolemian.hpp"

#endif  // SKOLEM_SKOLEM_HPP
