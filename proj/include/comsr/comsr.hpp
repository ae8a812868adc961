#pragma once

// Umbrella header for the whole library.

#include "comsr/codec.hpp"
#include "comsr/compress.hpp"
#include "comsr/core.hpp"
#include "comsr/json_io.hpp"
#include "comsr/mining.hpp"
#include "comsr/oracle.hpp"
#include "comsr/parallel.hpp"
#include "comsr/rules.hpp"
#include "comsr/seqdb.hpp"
