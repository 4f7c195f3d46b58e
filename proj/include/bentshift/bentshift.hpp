#pragma once

#include "bentshift/classical.hpp"
#include "bentshift/combinatorial.hpp"
#include "bentshift/descriptor.hpp"
#include "bentshift/errors.hpp"
#include "bentshift/families.hpp"
#include "bentshift/gf2.hpp"
#include "bentshift/gf2k.hpp"
#include "bentshift/io.hpp"
#include "bentshift/oracle.hpp"
#include "bentshift/parallel.hpp"
#include "bentshift/quantum.hpp"
#include "bentshift/report.hpp"
#include "bentshift/truth_table.hpp"
