#pragma once

#include "avr/affinity.hpp"
#include "avr/axiom_suite.hpp"
#include "avr/axioms.hpp"
#include "avr/debias.hpp"
#include "avr/error.hpp"
#include "avr/io.hpp"
#include "avr/profile.hpp"
#include "avr/random.hpp"
#include "avr/report.hpp"
#include "avr/rational.hpp"
#include "avr/rules.hpp"
#include "avr/runoff.hpp"
#include "avr/spatial.hpp"
#include "avr/sweep.hpp"
