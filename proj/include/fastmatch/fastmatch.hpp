// Copyright 2026 The fastmatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "fastmatch/analysis.hpp"
#include "fastmatch/dense.hpp"
#include "fastmatch/downsample.hpp"
#include "fastmatch/error.hpp"
#include "fastmatch/harness.hpp"
#include "fastmatch/matcher.hpp"
#include "fastmatch/report.hpp"
#include "fastmatch/rng.hpp"
#include "fastmatch/signal.hpp"
#include "fastmatch/signal_io.hpp"
#include "fastmatch/spectral.hpp"
