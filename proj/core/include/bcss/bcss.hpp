// SPDX-License-Identifier: Apache-2.0
//
// bcss: multi-user binary chirp spread spectrum analysis
// Copyright (C) 2026 The bcss authors
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
// ------------------------------------------------------------------------


#ifndef BCSS_BCSS_HPP
#define BCSS_BCSS_HPP

#include "bcss/ber.hpp"
#include "bcss/mc.hpp"
#include "bcss/scenario.hpp"
#include "bcss/specfun.hpp"
#include "bcss/version.hpp"
#include "bcss/waveform.hpp"
#include "bcss/xcorr.hpp"

#endif  // BCSS_BCSS_HPP
