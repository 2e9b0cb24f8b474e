/* Copyright 2026 The Floorgrid Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef FLOORGRID_FLOORGRID_HPP_
#define FLOORGRID_FLOORGRID_HPP_

#include "floorgrid/density.hpp"
#include "floorgrid/encoding.hpp"
#include "floorgrid/error.hpp"
#include "floorgrid/floorplan.hpp"
#include "floorgrid/geometry.hpp"
#include "floorgrid/grid.hpp"
#include "floorgrid/labeling.hpp"
#include "floorgrid/partition.hpp"
#include "floorgrid/raster.hpp"
#include "floorgrid/report.hpp"
#include "floorgrid/synth.hpp"

#endif  // FLOORGRID_FLOORGRID_HPP_
