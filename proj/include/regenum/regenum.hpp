// Copyright 2026 The regenum Authors.
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

#include "regenum/aspl.hpp"
#include "regenum/canonical.hpp"
#include "regenum/error.hpp"
#include "regenum/generator.hpp"
#include "regenum/graph.hpp"
#include "regenum/graph6.hpp"
#include "regenum/job.hpp"
#include "regenum/ledger.hpp"
#include "regenum/metrics.hpp"
#include "regenum/net.hpp"
#include "regenum/oracle.hpp"
#include "regenum/scheduler.hpp"
#include "regenum/search.hpp"
#include "regenum/wire.hpp"
