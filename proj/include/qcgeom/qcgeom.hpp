// Copyright 2026 The qcgeom Authors
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

#include "qcgeom/bounds_checker.hpp"
#include "qcgeom/errors.hpp"
#include "qcgeom/finsler_metric.hpp"
#include "qcgeom/manifold_charts.hpp"
#include "qcgeom/path_geometry.hpp"
#include "qcgeom/pauli_algebra.hpp"
#include "qcgeom/standard_simulation.hpp"
