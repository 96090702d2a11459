#pragma once

#include "motionlab/bisect.hpp"
#include "motionlab/bounds.hpp"
#include "motionlab/dimest.hpp"
#include "motionlab/envelope.hpp"
#include "motionlab/error.hpp"
#include "motionlab/format.hpp"
#include "motionlab/harmonic.hpp"
#include "motionlab/harnack.hpp"
#include "motionlab/ifs.hpp"
#include "motionlab/io.hpp"
#include "motionlab/motion.hpp"
#include "motionlab/parallel.hpp"
#include "motionlab/point.hpp"
#include "motionlab/rng.hpp"
#include "motionlab/verify.hpp"
