#pragma once

// Umbrella header.

#include "jensen_lab/error.hpp"
#include "jensen_lab/function_spec.hpp"
#include "jensen_lab/instance.hpp"
#include "jensen_lab/interval.hpp"
#include "jensen_lab/jensen.hpp"
#include "jensen_lab/job.hpp"
#include "jensen_lab/measure.hpp"
#include "jensen_lab/quadrature.hpp"
#include "jensen_lab/search_lab.hpp"
#include "jensen_lab/settings.hpp"
#include "jensen_lab/shape_check.hpp"
#include "jensen_lab/sp_certify.hpp"
