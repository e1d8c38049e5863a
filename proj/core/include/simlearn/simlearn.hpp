// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/assignment.hpp"
#include "simlearn/channel.hpp"
#include "simlearn/channel_io.hpp"
#include "simlearn/config.hpp"
#include "simlearn/diagonality.hpp"
#include "simlearn/experiments.hpp"
#include "simlearn/forward_model.hpp"
#include "simlearn/geometry.hpp"
#include "simlearn/impairments.hpp"
#include "simlearn/metrics.hpp"
#include "simlearn/phase_book.hpp"
#include "simlearn/report_io.hpp"
#include "simlearn/seeding.hpp"
#include "simlearn/signals.hpp"
#include "simlearn/training.hpp"
#include "simlearn/validation.hpp"
