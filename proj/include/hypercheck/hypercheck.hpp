#pragma once

#include "hypercheck/battery.hpp"
#include "hypercheck/certificates.hpp"
#include "hypercheck/constructions.hpp"
#include "hypercheck/error.hpp"
#include "hypercheck/finite_system.hpp"
#include "hypercheck/hyperspace.hpp"
#include "hypercheck/metric.hpp"
#include "hypercheck/oracle.hpp"
#include "hypercheck/pl_system.hpp"
#include "hypercheck/properties.hpp"
#include "hypercheck/rational.hpp"
#include "hypercheck/serialize.hpp"
#include "hypercheck/shift_system.hpp"
#include "hypercheck/theorems.hpp"
#include "hypercheck/validate.hpp"
#include "hypercheck/verdict.hpp"
