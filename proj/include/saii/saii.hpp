#pragma once

#include "saii/alphabet.hpp"
#include "saii/builder.hpp"
#include "saii/bwt.hpp"
#include "saii/costmodel.hpp"
#include "saii/error.hpp"
#include "saii/fm_index.hpp"
#include "saii/occ.hpp"
