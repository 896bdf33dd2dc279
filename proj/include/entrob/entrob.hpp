#ifndef ENTROB_ENTROB_HPP
#define ENTROB_ENTROB_HPP

#include "entrob/channels.hpp"
#include "entrob/error.hpp"
#include "entrob/ketparse.hpp"
#include "entrob/linalg.hpp"
#include "entrob/robustness.hpp"
#include "entrob/separability.hpp"
#include "entrob/squeezing.hpp"
#include "entrob/states.hpp"

#endif  // ENTROB_ENTROB_HPP
