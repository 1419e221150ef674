#pragma once

// Convenience include for the whole library.

#include "pforms/cli.hpp"
#include "pforms/darboux.hpp"
#include "pforms/errors.hpp"
#include "pforms/exterior.hpp"
#include "pforms/form.hpp"
#include "pforms/json_io.hpp"
#include "pforms/matrix.hpp"
#include "pforms/parser.hpp"
#include "pforms/polynomial.hpp"
#include "pforms/printer.hpp"
#include "pforms/projective.hpp"
#include "pforms/random_gen.hpp"
#include "pforms/rational.hpp"
#include "pforms/selfcheck.hpp"
