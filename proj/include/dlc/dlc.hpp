#pragma once

#include "dlc/types.hpp"
#include "dlc/linalg.hpp"
#include "dlc/random.hpp"
#include "dlc/states.hpp"
#include "dlc/measures.hpp"
#include "dlc/channels.hpp"
#include "dlc/optimize.hpp"
#include "dlc/discord.hpp"
#include "dlc/evaluate.hpp"
#include "dlc/io.hpp"
#include "dlc/sweep.hpp"
#include "dlc/verify.hpp"
