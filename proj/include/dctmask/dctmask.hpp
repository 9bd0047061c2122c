// Copyright 2026 The DCT Mask Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "dctmask/annotations.hpp"
#include "dctmask/batch.hpp"
#include "dctmask/codec.hpp"
#include "dctmask/distance.hpp"
#include "dctmask/error.hpp"
#include "dctmask/grid.hpp"
#include "dctmask/io.hpp"
#include "dctmask/metrics.hpp"
#include "dctmask/polygon.hpp"
#include "dctmask/resize.hpp"
#include "dctmask/rle.hpp"
#include "dctmask/synthetic.hpp"
#include "dctmask/transform.hpp"

namespace dctmask {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dctmask
