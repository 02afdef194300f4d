#pragma once

#include <dissoc/blockpos.hpp>
#include <dissoc/certificate_io.hpp>
#include <dissoc/channels.hpp>
#include <dissoc/constraints.hpp>
#include <dissoc/decomposition.hpp>
#include <dissoc/detectors.hpp>
#include <dissoc/linalg.hpp>
#include <dissoc/lmi.hpp>
#include <dissoc/partitions.hpp>
#include <dissoc/sic.hpp>
#include <dissoc/solver.hpp>
#include <dissoc/states.hpp>
#include <dissoc/version.hpp>
