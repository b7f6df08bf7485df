// SPDX-License-Identifier: Apache-2.0
//
// aoajam - AoA estimation under adversarial jamming in Rician fading
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "aoajam/array.hpp"
#include "aoajam/channel.hpp"
#include "aoajam/commands.hpp"
#include "aoajam/config.hpp"
#include "aoajam/csv.hpp"
#include "aoajam/estimation.hpp"
#include "aoajam/jammer.hpp"
#include "aoajam/linalg.hpp"
#include "aoajam/rng.hpp"
#include "aoajam/sim.hpp"
#include "aoajam/training.hpp"
#include "aoajam/waterfill.hpp"
