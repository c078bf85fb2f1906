#pragma once

// BEA-1 reference cipher and analysis workbench. Research use only: the cipher
// contains a deliberate backdoor.

#include "bea1/analysis.hpp"
#include "bea1/bit_matrix.hpp"
#include "bea1/bundles.hpp"
#include "bea1/cipher.hpp"
#include "bea1/ctr.hpp"
#include "bea1/kat.hpp"
#include "bea1/randtest.hpp"
#include "bea1/report.hpp"
#include "bea1/tables.hpp"
