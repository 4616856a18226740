#pragma once

/// @file nam.hpp
/// @brief Umbrella header.

#include "nam/algebra.hpp"
#include "nam/cyclotomic.hpp"
#include "nam/error.hpp"
#include "nam/gaussian.hpp"
#include "nam/kakutani.hpp"
#include "nam/linalg.hpp"
#include "nam/matrix.hpp"
#include "nam/measure.hpp"
#include "nam/oracle.hpp"
#include "nam/padic.hpp"
#include "nam/rational.hpp"
#include "nam/transform.hpp"
#include "nam/weak_dist.hpp"
