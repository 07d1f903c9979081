#ifndef SOCIALH_SOCIALH_HPP
#define SOCIALH_SOCIALH_HPP

#include "socialh/types.hpp"
#include "socialh/rational.hpp"
#include "socialh/parallel.hpp"
#include "socialh/corpus.hpp"
#include "socialh/metrics.hpp"
#include "socialh/temporal.hpp"
#include "socialh/simulate.hpp"
#include "socialh/report.hpp"

#endif // SOCIALH_SOCIALH_HPP
