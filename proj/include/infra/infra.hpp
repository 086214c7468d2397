#pragma once

#include "algebra.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "io.hpp"
#include "lemmas.hpp"
#include "logic.hpp"
#include "models.hpp"
#include "operators.hpp"
#include "oracle.hpp"
#include "paper_suite.hpp"
#include "search.hpp"
#include "semantics.hpp"
#include "setfam.hpp"
