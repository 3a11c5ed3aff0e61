/**
 * \file conicmap.hpp
 * \brief Umbrella header
 **********************************************************************/

#pragma once

#include <conicmap/angle.hpp>
#include <conicmap/csv.hpp>
#include <conicmap/distortion.hpp>
#include <conicmap/error.hpp>
#include <conicmap/format.hpp>
#include <conicmap/numeric.hpp>
#include <conicmap/optimizer.hpp>
#include <conicmap/projection.hpp>
#include <conicmap/sphere.hpp>
#include <conicmap/svg.hpp>
