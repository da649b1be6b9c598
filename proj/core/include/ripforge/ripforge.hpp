// Copyright 2026 The ripforge Authors.
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

#include "ripforge/analysis.hpp"
#include "ripforge/certify.hpp"
#include "ripforge/constructors.hpp"
#include "ripforge/designs.hpp"
#include "ripforge/error.hpp"
#include "ripforge/golomb.hpp"
#include "ripforge/matrix.hpp"
#include "ripforge/num_theory.hpp"
#include "ripforge/parallel.hpp"
#include "ripforge/random.hpp"
#include "ripforge/recovery.hpp"
